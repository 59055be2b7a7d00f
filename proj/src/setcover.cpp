#include <algorithm>
#include <chrono>
#include <limits>

#include "rcp/s0_solvers.hpp"

namespace rcp {

Verdict setcover_d1(const Instance& inst, const SetCoverOptions& opts) {
    require_normalized(inst, "setcover_d1");
    if (inst.d != 1) throw PreconditionViolation("setcover_d1: requires d = 1");
    const int p = inst.p();
    if (p > opts.max_p)
        throw BudgetExceeded("setcover_d1: p = " + std::to_string(p) + " exceeds the limit of " +
                             std::to_string(opts.max_p));
    const auto start = std::chrono::steady_clock::now();

    const std::size_t states = std::size_t{1} << p;
    const std::uint64_t full = states - 1;
    constexpr std::uint8_t kUnreached = std::numeric_limits<std::uint8_t>::max();
    std::vector<std::uint8_t> best(states, kUnreached);
    std::vector<std::uint32_t> from(states, 0);
    std::vector<int> via(states, -1);

    std::vector<std::uint64_t> masks;
    std::vector<int> owner;
    for (int u = 0; u < inst.num_users(); ++u) {
        const std::uint64_t m = inst.access[u].low_mask() & full;
        if (m == 0) continue;
        masks.push_back(m);
        owner.push_back(u);
    }

    std::uint64_t nodes = 0;
    best[0] = 0;
    for (std::uint64_t covered = 0; covered < states; ++covered) {
        if (best[covered] == kUnreached || best[covered] >= *inst.t) continue;
        ++nodes;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            const std::uint64_t next = covered | masks[i];
            if (next == covered || best[next] <= best[covered] + 1) continue;
            best[next] = static_cast<std::uint8_t>(best[covered] + 1);
            from[next] = static_cast<std::uint32_t>(covered);
            via[next] = owner[i];
        }
    }

    Verdict v;
    v.stats = {"setcover", nodes, 0.0};
    if (best[full] == kUnreached) {
        v.answer = Answer::unsat;
        v.witness = BlockerSet{};
    } else {
        UserSet team;
        for (std::uint64_t cur = full; cur != 0; cur = from[cur]) team.push_back(via[cur]);
        std::sort(team.begin(), team.end());
        v.answer = Answer::sat;
        v.witness = TeamSet{{std::move(team)}};
    }
    v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

} // namespace rcp
