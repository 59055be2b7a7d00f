#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcp/policy.hpp"

// User reduction for res(P, 0, d, t) with t >= |P|. Output instances have at
// most d * |P| users and the same answer as the input.
namespace rcp {

// X ⊆ P, Y ⊆ U with N(Y) ∩ P ⊆ X, and pairs giving every resource of X
// exactly d distinct private users in Y.
struct ExpansionWitness {
    ResourceSet resources;                    // X
    UserSet users;                            // Y
    std::vector<std::pair<int, int>> pairs;   // (resource, user)
};

bool is_valid_expansion(const Instance& inst, const ExpansionWitness& w, int d);

enum class KernelRule { strip_empty, expansion, resources_exhausted };

const char* to_string(KernelRule rule);
KernelRule parse_kernel_rule(const std::string& name);

// Identifiers refer to users and resources of the instance the step acted on.
struct KernelStep {
    KernelRule rule = KernelRule::strip_empty;
    std::vector<std::string> deleted_users;
    std::vector<std::string> deleted_resources;
    std::vector<std::pair<std::string, std::string>> pairs;  // (resource, user), expansion steps only

    friend bool operator==(const KernelStep&, const KernelStep&) = default;
};

struct KernelTrace {
    std::vector<KernelStep> steps;

    // P became empty: the instance is SAT with d empty teams.
    bool resolved_sat() const {
        return !steps.empty() && steps.back().rule == KernelRule::resources_exhausted;
    }
    friend bool operator==(const KernelTrace&, const KernelTrace&) = default;
};

struct KernelResult {
    Instance instance;
    KernelTrace trace;
};

// Deletes users with N(u) ∩ P = ∅.
KernelResult rule1_strip(const Instance& inst);

// Needs |U| >= d|P| and every N(u) ∩ P nonempty; returns nullopt below the size threshold.
std::optional<ExpansionWitness> find_d_expansion(const Instance& inst, int d);

// Deletes X from P and R and Y from U. Throws PreconditionViolation on an invalid witness.
KernelResult rule2_apply(const Instance& inst, const ExpansionWitness& w);

// Requires s = 0, t >= |P| (or unbounded) and P = R.
KernelResult kernelize(const Instance& inst);

// Re-applies the deletions of a trace to the instance it was computed from.
Instance replay(const Instance& original, const KernelTrace& trace);

// Turns teams of the kernel into teams of the original instance by adding,
// for each expansion step, the i-th matched user of every deleted resource
// to team i. Teams are then trimmed to inclusion-minimal covers.
TeamSet lift_teams(const Instance& original, const KernelTrace& trace, const Instance& kernel,
                   const TeamSet& kernel_teams);

} // namespace rcp
