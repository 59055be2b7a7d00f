#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/resource_set.hpp"

namespace rcp {

// Sorted, duplicate-free list of user indices.
using UserSet = std::vector<int>;

// An authorization policy UR together with a resiliency query res(P, s, d, t).
struct Instance {
    std::vector<std::string> user_ids;
    std::vector<std::string> resource_ids;
    std::vector<ResourceSet> access;  // N(u) for each user
    ResourceSet target;               // P
    int s = 0;
    int d = 1;
    std::optional<int> t;             // nullopt: no bound on team size

    // Index of each user in the instance this one was derived from by
    // restriction or kernelization. Identity for freshly built instances.
    std::vector<int> user_origin;

    int num_users() const { return static_cast<int>(access.size()); }
    int num_resources() const { return static_cast<int>(resource_ids.size()); }
    int p() const { return target.count(); }
};

// Builds an instance with generated ids ("u0", "r0", ...) and identity origins.
Instance make_instance(int num_resources, std::vector<ResourceSet> access, ResourceSet target, int s,
                       int d, std::optional<int> t);

// Throws InputError when the invariants of Instance do not hold.
void validate(const Instance& inst);

// True when P = R = {0..m-1} and t is finite with t <= |P|.
bool is_normalized(const Instance& inst);
void require_normalized(const Instance& inst, const char* who);

struct TeamSet {
    std::vector<UserSet> teams;
    friend bool operator==(const TeamSet&, const TeamSet&) = default;
};

struct BlockerSet {
    UserSet users;
    friend bool operator==(const BlockerSet&, const BlockerSet&) = default;
};

using Witness = std::variant<std::monostate, TeamSet, BlockerSet>;

enum class Answer { sat, unsat };

const char* to_string(Answer a);

struct SolveStats {
    std::string algorithm;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

struct Verdict {
    Answer answer = Answer::sat;
    Witness witness;
    SolveStats stats;

    bool sat() const { return answer == Answer::sat; }
    const TeamSet* teams() const { return std::get_if<TeamSet>(&witness); }
    const BlockerSet* blocker() const { return std::get_if<BlockerSet>(&witness); }
};

// Users grouped by N(u) ∩ P, keyed (and ordered) by that neighborhood.
struct ClassPartition {
    std::map<ResourceSet, UserSet> classes;

    const UserSet& members(const ResourceSet& c) const;
    int size_of(const ResourceSet& c) const;
};

ResourceSet neighborhood(const Instance& inst, std::span<const int> users);

// UR restricted to `keep`; users are renumbered in the order given, which
// must be increasing. P, s, d and t are unchanged.
Instance restrict(const Instance& inst, std::span<const int> keep);

// Restriction to U \ removed.
Instance without(const Instance& inst, std::span<const int> removed);

// Clamps t to |P| (unbounded becomes |P|) and drops resources outside P so
// that P = R afterwards. Throws InputError when P is empty.
Instance normalize(const Instance& inst);

ClassPartition class_partition(const Instance& inst);

// Conditions of a set of teams: exactly d teams, pairwise disjoint, each of
// size <= t and covering P. Users removed in `avoid` may not appear.
bool is_team_set(const Instance& inst, const TeamSet& teams, std::span<const int> avoid = {});

// TeamSet witnesses are checked directly; BlockerSet witnesses require
// |S| <= s and an UNSAT answer from the brute-force oracle on U \ S.
// A verdict without a witness is rejected.
bool verify_witness(const Instance& inst, const Verdict& v);

UserSet complement(int num_users, std::span<const int> users);

} // namespace rcp
