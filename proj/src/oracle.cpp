#include "rcp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace rcp {
namespace {

void check_guard(const Instance& inst, const OracleOptions& opts) {
    if (!opts.unlimited && inst.num_users() > opts.max_users)
        throw BudgetExceeded("oracle: " + std::to_string(inst.num_users()) + " users exceeds the limit of " +
                             std::to_string(opts.max_users));
}

// Builds teams one after another. Inside a team, branches on which unused
// user covers the lowest still-missing resource. Teams are generated in
// increasing order of their first pick, and among unused users with equal
// neighborhoods only the first is tried at each branching point.
class TeamSearch {
public:
    explicit TeamSearch(const Instance& inst)
        : inst_(inst),
          target_(inst.target),
          cap_(inst.t.value_or(std::numeric_limits<int>::max())),
          used_(inst.num_users(), 0),
          coverage_(inst.num_resources(), 0) {
        for (int u = 0; u < inst.num_users(); ++u) {
            trimmed_.push_back(inst.access[u] & target_);
            for (int r : trimmed_.back().members()) ++coverage_[r];
        }
        resources_ = target_.members();
    }

    bool run() {
        if (target_.empty()) {
            teams_.assign(inst_.d, {});
            return true;
        }
        return open_team(0, -1);
    }

    std::vector<UserSet> teams() const {
        auto out = teams_;
        for (auto& team : out) std::sort(team.begin(), team.end());
        std::sort(out.begin(), out.end(), [](const UserSet& a, const UserSet& b) {
            if (a.empty() || b.empty()) return a.size() < b.size();
            return a.front() < b.front();
        });
        return out;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    bool open_team(int j, int last_first_pick) {
        if (j == inst_.d) return true;
        teams_.resize(j + 1);
        teams_[j].clear();
        return extend(j, target_, last_first_pick);
    }

    // Every resource must still be coverable by each team that lacks it.
    bool feasible(int j, const ResourceSet& missing) const {
        const int later = inst_.d - j - 1;
        for (int r : resources_)
            if (coverage_[r] < later + (missing.test(r) ? 1 : 0)) return false;
        return true;
    }

    bool extend(int j, const ResourceSet& missing, int last_first_pick) {
        ++nodes_;
        if (missing.empty()) return open_team(j + 1, teams_[j].front());
        if (static_cast<int>(teams_[j].size()) >= cap_) return false;
        if (!feasible(j, missing)) return false;

        const int r = missing.first();
        const bool first_pick = teams_[j].empty();
        std::vector<ResourceSet> tried;
        for (int u = first_pick ? last_first_pick + 1 : 0; u < inst_.num_users(); ++u) {
            if (used_[u] || !trimmed_[u].test(r)) continue;
            if (std::find(tried.begin(), tried.end(), trimmed_[u]) != tried.end()) continue;
            tried.push_back(trimmed_[u]);

            take(u);
            teams_[j].push_back(u);
            if (extend(j, missing - trimmed_[u], last_first_pick)) return true;
            teams_[j].pop_back();
            release(u);
        }
        return false;
    }

    void take(int u) {
        used_[u] = 1;
        for (int r : trimmed_[u].members()) --coverage_[r];
    }
    void release(int u) {
        used_[u] = 0;
        for (int r : trimmed_[u].members()) ++coverage_[r];
    }

    const Instance& inst_;
    ResourceSet target_;
    int cap_;
    std::vector<ResourceSet> trimmed_;
    std::vector<int> resources_;
    std::vector<char> used_;
    std::vector<int> coverage_;
    std::vector<UserSet> teams_;
    std::uint64_t nodes_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Calls fn on each k-subset of {0..n-1} in lexicographic order until it returns true.
template <typename Fn>
bool for_each_subset(int n, int k, Fn&& fn) {
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (fn(std::as_const(idx))) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

Verdict solve_s0_bruteforce(const Instance& inst, const OracleOptions& opts) {
    check_guard(inst, opts);
    auto start = std::chrono::steady_clock::now();
    TeamSearch search(inst);
    Verdict v;
    if (search.run()) {
        v.answer = Answer::sat;
        v.witness = TeamSet{search.teams()};
    } else {
        v.answer = Answer::unsat;
        v.witness = BlockerSet{};
    }
    v.stats = {"oracle", search.nodes(), seconds_since(start)};
    return v;
}

bool is_blocker(const Instance& inst, std::span<const int> users, const OracleOptions& opts) {
    return !solve_s0_bruteforce(without(inst, users), opts).sat();
}

Verdict solve_rcp_bruteforce(const Instance& inst, const OracleOptions& opts) {
    check_guard(inst, opts);
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    v.stats.algorithm = "oracle";

    const int n = inst.num_users();
    for (int k = 0; k <= std::min(inst.s, n); ++k) {
        bool found = for_each_subset(n, k, [&](const std::vector<int>& removed) {
            Verdict inner = solve_s0_bruteforce(without(inst, removed), opts);
            v.stats.nodes += inner.stats.nodes;
            if (inner.sat()) {
                if (k == 0 && inst.s == 0) v.witness = inner.witness;
                return false;
            }
            v.answer = Answer::unsat;
            v.witness = BlockerSet{removed};
            return true;
        });
        if (found) break;
    }
    if (v.sat() && inst.s != 0) v.witness = std::monostate{};
    v.stats.seconds = seconds_since(start);
    return v;
}

BlockerSet shrink_blocker(const Instance& inst, BlockerSet blocker, const OracleOptions& opts) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < blocker.users.size(); ++i) {
            UserSet smaller = blocker.users;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
            if (is_blocker(inst, smaller, opts)) {
                blocker.users = std::move(smaller);
                changed = true;
                break;
            }
        }
    }
    return blocker;
}

std::optional<BlockerSet> find_minimal_blocker(const Instance& inst, const OracleOptions& opts) {
    Verdict v = solve_rcp_bruteforce(inst, opts);
    if (v.sat()) return std::nullopt;
    return shrink_blocker(inst, *v.blocker(), opts);
}

} // namespace rcp
