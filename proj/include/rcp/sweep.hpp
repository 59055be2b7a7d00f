#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rcp/general_solvers.hpp"
#include "rcp/policy.hpp"

// Cross-checks every solver against the brute-force oracle over an
// exhaustive grid of small relations plus seeded random instances.
namespace rcp {

struct SweepSolver {
    std::string name;  // a --algorithm name of the CLI
    std::function<bool(const Instance&)> applies;
    std::function<Verdict(const Instance&)> run;
};

using SolveFn = std::function<Verdict(const Instance&, Strategy, const SolveOptions&)>;

// dp, ilp, setcover, branch, reduced, fastpath and auto, each on its domain,
// all run through `fn`.
std::vector<SweepSolver> default_sweep_solvers(const SolveOptions& opts = {}, SolveFn fn = solve);

struct SweepOptions {
    int max_n = 5;
    int max_p = 3;
    int max_s = 2;
    int max_d = 2;
    int max_t = 3;  // t ranges over 1..max_t and unbounded
    // Exhaustive grid over every relation (true) or one relation per
    // multiset of neighborhoods (false).
    bool labelled = true;
    int seeds = 1000;  // random instances, 0 for exhaustive only
    int random_max_n = 10;
    int random_max_p = 4;
    int random_max_s = 2;
    int random_max_d = 3;
    std::uint64_t base_seed = 1;
    std::string reproducer_path = "sweep-reproducer.json";
};

struct Disagreement {
    Instance instance;
    std::string solver;
    std::string detail;
};

struct SweepReport {
    std::uint64_t instances = 0;
    std::uint64_t solver_runs = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t witnesses_checked = 0;
    std::uint64_t witness_failures = 0;
    std::uint64_t branch_runs = 0;
    std::uint64_t branch_bound_violations = 0;
    std::uint64_t dp_runs = 0;
    std::uint64_t dp_bound_violations = 0;
    std::uint64_t minimal_blockers = 0;
    std::uint64_t class_inequality_violations = 0;
    std::vector<Disagreement> first;  // the first few failures of any kind
    std::optional<std::string> reproducer;  // path written, if any

    bool ok() const {
        return disagreements == 0 && witness_failures == 0 && branch_bound_violations == 0 &&
               dp_bound_violations == 0 && class_inequality_violations == 0;
    }
};

// sum_{i=0}^{s} (d t)^i with t already capped at p.
double branch_node_bound(const Instance& inst);
// n * 2^{dp} * (t+1)^d.
double dp_state_bound(const Instance& inst);
// For every class C meeting the blocker, |U_C \ S| < d.
bool blocker_class_inequality(const Instance& inst, const BlockerSet& blocker);

// Runs all checks on one normalized instance, accumulating into report.
void sweep_instance(const Instance& inst, const std::vector<SweepSolver>& solvers, SweepReport& report);

SweepReport run_sweep(const SweepOptions& opts, const std::vector<SweepSolver>& solvers);

} // namespace rcp
