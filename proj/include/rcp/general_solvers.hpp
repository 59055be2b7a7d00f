#pragma once

#include <functional>
#include <map>
#include <string>

#include "rcp/oracle.hpp"
#include "rcp/policy.hpp"
#include "rcp/s0_solvers.hpp"

namespace rcp {

// Decides res(P, 0, d, t) on the instance it is given. SAT answers must
// carry a TeamSet witness.
using S0Solver = std::function<Verdict(const Instance&)>;

struct BranchOptions {
    bool dedup = false;  // skip removed-sets already explored
};

// Finds a set of teams, then branches on removing each of its members.
// stats.nodes counts branching nodes, at most sum_{i<=s} (dt)^i.
Verdict branch_solve(const Instance& inst, const S0Solver& s0, const BranchOptions& opts = {});

// k_C: how many representatives of class C a candidate blocker removes.
struct ClassDeletionVector {
    std::map<ResourceSet, int> k;

    int at(const ResourceSet& c) const {
        auto it = k.find(c);
        return it == k.end() ? 0 : it->second;
    }
};

// Cost of deleting k_C representatives of C once the users of C outside the
// representatives are added back: k_C + |U_C| - d_C, or 0 when k_C = 0.
int zeta(const ClassPartition& cp, const ClassDeletionVector& v, const ResourceSet& c, int d);

struct ReducedOptions {
    int max_classes = 4096;
};

// Enumerates per-class deletion counts over d_C = min(|U_C|, d)
// representatives per class and tests each candidate of cost <= s.
// stats.nodes counts the candidates tested.
Verdict reduced_solve(const Instance& inst, const S0Solver& s0, const ReducedOptions& opts = {});

// d = 1 and t >= |P|: SAT iff every resource of P is held by more than s users.
Verdict fastpath_d1_tinf(const Instance& inst);

enum class Strategy { automatic, oracle, dp, ilp, setcover, branch, reduced, fastpath };

const char* to_string(Strategy s);
// Throws InputError on unknown names.
Strategy parse_strategy(const std::string& name);

struct SolveOptions {
    DpOptions dp;
    IlpOptions ilp;
    ReducedOptions reduced;
    OracleOptions oracle;
    BranchOptions branch;
};

// s = 0 solver used inside branch/reduced: dp when d*p fits the DP budget,
// then ilp, then the oracle.
S0Solver default_s0_solver(const Instance& inst, const SolveOptions& opts, std::string* name = nullptr);

// Requires a normalized instance. stats.algorithm records the route taken.
Verdict solve(const Instance& inst, Strategy strategy, const SolveOptions& opts = {});

} // namespace rcp
