#include "rcp/general_solvers.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace rcp {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

UserSet with_user(const UserSet& users, int u) {
    UserSet out = users;
    out.insert(std::upper_bound(out.begin(), out.end(), u), u);
    return out;
}

class Brancher {
public:
    Brancher(const Instance& inst, const S0Solver& s0, const BranchOptions& opts)
        : inst_(inst), s0_(s0), opts_(opts) {}

    std::optional<UserSet> explore(const UserSet& removed, int budget) {
        ++nodes_;
        const UserSet kept = complement(inst_.num_users(), removed);
        const Verdict inner = s0_(restrict(inst_, kept));
        if (!inner.sat()) return removed;
        if (budget == 0) return std::nullopt;
        const TeamSet* teams = inner.teams();
        if (!teams) throw InternalError("branch_solve: inner solver returned SAT without teams");

        UserSet members;
        for (const auto& team : teams->teams)
            for (int local : team) members.push_back(kept[local]);
        std::sort(members.begin(), members.end());

        for (int u : members) {
            UserSet next = with_user(removed, u);
            if (opts_.dedup && !seen_.insert(next).second) continue;
            if (auto found = explore(next, budget - 1)) return found;
        }
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    const Instance& inst_;
    const S0Solver& s0_;
    BranchOptions opts_;
    std::set<UserSet> seen_;
    std::uint64_t nodes_ = 0;
};

} // namespace

Verdict branch_solve(const Instance& inst, const S0Solver& s0, const BranchOptions& opts) {
    require_normalized(inst, "branch_solve");
    const auto start = std::chrono::steady_clock::now();
    Brancher brancher(inst, s0, opts);
    const auto blocker = brancher.explore({}, inst.s);

    Verdict v;
    v.stats.algorithm = "branch";
    v.stats.nodes = brancher.nodes();
    if (blocker) {
        v.answer = Answer::unsat;
        v.witness = BlockerSet{*blocker};
    } else {
        v.answer = Answer::sat;
        if (inst.s == 0) v.witness = s0(inst).witness;
    }
    v.stats.seconds = seconds_since(start);
    return v;
}

int zeta(const ClassPartition& cp, const ClassDeletionVector& v, const ResourceSet& c, int d) {
    const int k = v.at(c);
    if (k <= 0) return 0;
    const int size = cp.size_of(c);
    return k + size - std::min(size, d);
}

Verdict reduced_solve(const Instance& inst, const S0Solver& s0, const ReducedOptions& opts) {
    require_normalized(inst, "reduced_solve");
    if (inst.p() >= 31 || (1LL << inst.p()) > opts.max_classes)
        throw BudgetExceeded("reduced_solve: 2^p = 2^" + std::to_string(inst.p()) + " classes exceeds the limit of " +
                             std::to_string(opts.max_classes));
    const auto start = std::chrono::steady_clock::now();
    const ClassPartition cp = class_partition(inst);

    struct ClassInfo {
        ResourceSet key;
        UserSet representatives;  // U^r_C: lowest-index d_C members
        UserSet others;           // U_C \ U^r_C
        int max_k = 0;
    };
    std::vector<ClassInfo> classes;
    UserSet reduced_users;
    for (const auto& [c, users] : cp.classes) {
        if (c.empty()) continue;
        const int dc = std::min(static_cast<int>(users.size()), inst.d);
        ClassInfo info;
        info.key = c;
        info.representatives.assign(users.begin(), users.begin() + dc);
        info.others.assign(users.begin() + dc, users.end());
        info.max_k = std::min({inst.s, inst.d, dc});
        reduced_users.insert(reduced_users.end(), info.representatives.begin(), info.representatives.end());
        classes.push_back(std::move(info));
    }
    std::sort(reduced_users.begin(), reduced_users.end());

    ClassDeletionVector vec;
    std::uint64_t tested = 0;
    std::optional<UserSet> blocker;

    auto test = [&]() {
        ++tested;
        UserSet removed;
        for (const auto& info : classes) {
            const int k = vec.at(info.key);
            removed.insert(removed.end(), info.representatives.begin(), info.representatives.begin() + k);
        }
        std::sort(removed.begin(), removed.end());
        UserSet kept;
        std::set_difference(reduced_users.begin(), reduced_users.end(), removed.begin(), removed.end(),
                            std::back_inserter(kept));
        if (s0(restrict(inst, kept)).sat()) return false;
        UserSet expanded = removed;
        for (const auto& info : classes)
            if (vec.at(info.key) > 0) expanded.insert(expanded.end(), info.others.begin(), info.others.end());
        std::sort(expanded.begin(), expanded.end());
        blocker = std::move(expanded);
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t i, int cost) -> bool {
        if (i == classes.size()) return test();
        const auto& info = classes[i];
        for (int k = 0; k <= info.max_k; ++k) {
            vec.k[info.key] = k;
            const int extra = zeta(cp, vec, info.key, inst.d);
            if (cost + extra > inst.s) break;
            if (self(self, i + 1, cost + extra)) return true;
        }
        vec.k.erase(info.key);
        return false;
    };
    dfs(dfs, 0, 0);

    Verdict v;
    v.stats.algorithm = "reduced";
    v.stats.nodes = tested;
    if (blocker) {
        v.answer = Answer::unsat;
        v.witness = BlockerSet{std::move(*blocker)};
    } else {
        v.answer = Answer::sat;
        if (inst.s == 0) v.witness = s0(inst).witness;
    }
    v.stats.seconds = seconds_since(start);
    return v;
}

Verdict fastpath_d1_tinf(const Instance& inst) {
    require_normalized(inst, "fastpath_d1_tinf");
    if (inst.d != 1 || *inst.t < inst.p())
        throw PreconditionViolation("fastpath_d1_tinf: requires d = 1 and t >= |P|");
    const auto start = std::chrono::steady_clock::now();
    const int p = inst.p();

    std::vector<int> coverage(p, 0);
    for (const auto& n : inst.access)
        for (int r : n.members())
            if (r < p) ++coverage[r];
    const int weakest = static_cast<int>(std::min_element(coverage.begin(), coverage.end()) - coverage.begin());

    Verdict v;
    v.stats = {"fastpath", static_cast<std::uint64_t>(inst.num_users()), 0.0};
    if (coverage[weakest] <= inst.s) {
        UserSet holders;
        for (int u = 0; u < inst.num_users(); ++u)
            if (inst.access[u].test(weakest)) holders.push_back(u);
        v.answer = Answer::unsat;
        v.witness = BlockerSet{std::move(holders)};
    } else {
        v.answer = Answer::sat;
        if (inst.s == 0) {
            UserSet team;
            ResourceSet covered;
            for (int r = 0; r < p; ++r) {
                if (covered.test(r)) continue;
                for (int u = 0; u < inst.num_users(); ++u) {
                    if (inst.access[u].test(r)) {
                        team.push_back(u);
                        covered |= inst.access[u];
                        break;
                    }
                }
            }
            std::sort(team.begin(), team.end());
            v.witness = TeamSet{{std::move(team)}};
        }
    }
    v.stats.seconds = seconds_since(start);
    return v;
}

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::oracle: return "oracle";
    case Strategy::dp: return "dp";
    case Strategy::ilp: return "ilp";
    case Strategy::setcover: return "setcover";
    case Strategy::branch: return "branch";
    case Strategy::reduced: return "reduced";
    case Strategy::fastpath: return "fastpath";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    for (Strategy s : {Strategy::automatic, Strategy::oracle, Strategy::dp, Strategy::ilp, Strategy::setcover,
                       Strategy::branch, Strategy::reduced, Strategy::fastpath})
        if (name == to_string(s)) return s;
    throw InputError("unknown algorithm '" + name + "'");
}

S0Solver default_s0_solver(const Instance& inst, const SolveOptions& opts, std::string* name) {
    auto pick = [&](const char* chosen, S0Solver fn) {
        if (name) *name = chosen;
        return fn;
    };
    if (static_cast<long long>(inst.d) * inst.p() <= opts.dp.max_bits)
        return pick("dp", [dp = opts.dp](const Instance& sub) { return dp_solve(sub, dp); });
    if (inst.p() < 31 && (1LL << inst.p()) <= opts.ilp.max_classes)
        return pick("ilp", [ilp = opts.ilp](const Instance& sub) { return ilp_solve(sub, ilp); });
    return pick("oracle", [oracle = opts.oracle](const Instance& sub) { return solve_s0_bruteforce(sub, oracle); });
}

namespace {

void require_s0(const Instance& inst, Strategy s) {
    if (inst.s != 0)
        throw PreconditionViolation(std::string(to_string(s)) +
                                    " decides s = 0 only; use branch, reduced or oracle for s > 0");
}

Verdict dispatch(const Instance& inst, Strategy strategy, const SolveOptions& opts) {
    switch (strategy) {
    case Strategy::oracle: return solve_rcp_bruteforce(inst, opts.oracle);
    case Strategy::dp: require_s0(inst, strategy); return dp_solve(inst, opts.dp);
    case Strategy::ilp: require_s0(inst, strategy); return ilp_solve(inst, opts.ilp);
    case Strategy::setcover: require_s0(inst, strategy); return setcover_d1(inst);
    case Strategy::fastpath: return fastpath_d1_tinf(inst);
    case Strategy::branch:
    case Strategy::reduced: {
        std::string inner_name;
        const S0Solver inner = default_s0_solver(inst, opts, &inner_name);
        Verdict v = strategy == Strategy::branch ? branch_solve(inst, inner, opts.branch)
                                                 : reduced_solve(inst, inner, opts.reduced);
        v.stats.algorithm += "+" + inner_name;
        return v;
    }
    case Strategy::automatic: break;
    }

    if (inst.d == 1 && *inst.t >= inst.p()) return fastpath_d1_tinf(inst);
    const bool dp_fits = static_cast<long long>(inst.d) * inst.p() <= opts.dp.max_bits;
    const bool classes_fit = inst.p() < 31 && (1LL << inst.p()) <= opts.ilp.max_classes;
    if (inst.s == 0) {
        if (dp_fits) return dp_solve(inst, opts.dp);
        if (classes_fit) {
            try {
                return ilp_solve(inst, opts.ilp);
            } catch (const BudgetExceeded&) {
            }
        }
        return solve_s0_bruteforce(inst, opts.oracle);
    }
    if (dp_fits) return dispatch(inst, Strategy::branch, opts);
    if (classes_fit) return dispatch(inst, Strategy::reduced, opts);
    return solve_rcp_bruteforce(inst, opts.oracle);
}

} // namespace

Verdict solve(const Instance& inst, Strategy strategy, const SolveOptions& opts) {
    require_normalized(inst, "solve");
    Verdict v = dispatch(inst, strategy, opts);
    if (strategy == Strategy::automatic) v.stats.algorithm = "auto/" + v.stats.algorithm;
    return v;
}

} // namespace rcp
