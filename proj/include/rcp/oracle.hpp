#pragma once

#include <optional>

#include "rcp/policy.hpp"

namespace rcp {

// Reference solvers. They only read UR, P, d and t, and do not rely on the
// instance being normalized.
struct OracleOptions {
    int max_users = 20;
    bool unlimited = false;  // lift the max_users guard
};

// Exhaustive search for d disjoint teams; s is ignored. Teams in the
// witness are sorted by their smallest member.
Verdict solve_s0_bruteforce(const Instance& inst, const OracleOptions& opts = {});

// Tries every S with |S| <= s in order of increasing size, lexicographic
// within a size. UNSAT witnesses are minimum-cardinality blockers.
Verdict solve_rcp_bruteforce(const Instance& inst, const OracleOptions& opts = {});

bool is_blocker(const Instance& inst, std::span<const int> users, const OracleOptions& opts = {});

// Removes members of a blocker one at a time (increasing index) while the
// remainder still blocks, until no single removal keeps it a blocker.
BlockerSet shrink_blocker(const Instance& inst, BlockerSet blocker, const OracleOptions& opts = {});

// Inclusion-minimal blocker of size <= s, if any.
std::optional<BlockerSet> find_minimal_blocker(const Instance& inst, const OracleOptions& opts = {});

} // namespace rcp
