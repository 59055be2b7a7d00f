#include <algorithm>
#include <bit>
#include <chrono>
#include <unordered_set>

#include "rcp/s0_solvers.hpp"

namespace rcp {
namespace {

// State key: d fields of (demand bits | used-count << p), field j at bit j*width.
struct KeyLayout {
    int d = 1;
    int p = 1;
    int count_bits = 0;  // 0 when t >= p: every useful join shrinks the demand
    int width = 1;
    std::uint64_t demand_mask = 0;
    std::uint64_t field_mask = 0;

    int total_bits() const { return d * width; }
    std::uint64_t field(std::uint64_t key, int j) const { return (key >> (j * width)) & field_mask; }
    std::uint64_t demand(std::uint64_t f) const { return f & demand_mask; }
    int used(std::uint64_t f) const { return static_cast<int>(f >> p); }
    std::uint64_t make_field(std::uint64_t demand, int used) const {
        return demand | (static_cast<std::uint64_t>(used) << p);
    }
    std::uint64_t replace(std::uint64_t key, int j, std::uint64_t f) const {
        return (key & ~(field_mask << (j * width))) | (f << (j * width));
    }
    bool all_covered(std::uint64_t key) const {
        for (int j = 0; j < d; ++j)
            if (demand(field(key, j)) != 0) return false;
        return true;
    }
};

constexpr int kDenseBits = 24;

class LayerBuilder {
public:
    explicit LayerBuilder(int bits) : dense_(bits <= kDenseBits) {
        if (dense_) seen_.assign((std::size_t{1} << bits) / 64 + 1, 0);
    }

    void add(std::uint64_t key) {
        if (dense_) {
            auto& word = seen_[key >> 6];
            const std::uint64_t bit = std::uint64_t{1} << (key & 63);
            if (word & bit) return;
            word |= bit;
        } else if (!sparse_.insert(key).second) {
            return;
        }
        keys_.push_back(key);
    }

    // Returns the sorted layer and resets for the next one.
    std::vector<std::uint64_t> take() {
        if (dense_)
            for (auto key : keys_) seen_[key >> 6] = 0;
        else
            sparse_.clear();
        std::vector<std::uint64_t> out;
        out.swap(keys_);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    bool dense_;
    std::vector<std::uint64_t> seen_;
    std::unordered_set<std::uint64_t> sparse_;
    std::vector<std::uint64_t> keys_;
};

bool contains(const std::vector<std::uint64_t>& layer, std::uint64_t key) {
    return std::binary_search(layer.begin(), layer.end(), key);
}

} // namespace

Verdict dp_solve(const Instance& inst, const DpOptions& opts) {
    require_normalized(inst, "dp_solve");
    const auto start = std::chrono::steady_clock::now();
    const int n = inst.num_users();
    const int p = inst.p();
    const int t = *inst.t;
    if (static_cast<long long>(inst.d) * p > opts.max_bits)
        throw BudgetExceeded("dp_solve: d*p = " + std::to_string(static_cast<long long>(inst.d) * p) +
                             " exceeds the bit budget of " + std::to_string(opts.max_bits));

    KeyLayout layout;
    layout.d = inst.d;
    layout.p = p;
    layout.count_bits = t >= p ? 0 : std::bit_width(static_cast<unsigned>(t));
    layout.width = p + layout.count_bits;
    layout.demand_mask = (std::uint64_t{1} << p) - 1;
    layout.field_mask = (std::uint64_t{1} << layout.width) - 1;
    if (layout.total_bits() > 64)
        throw BudgetExceeded("dp_solve: state key needs " + std::to_string(layout.total_bits()) + " bits");

    std::vector<std::uint64_t> neighborhoods(n);
    for (int u = 0; u < n; ++u) neighborhoods[u] = inst.access[u].low_mask() & layout.demand_mask;

    std::uint64_t initial = 0;
    for (int j = 0; j < inst.d; ++j) initial = layout.replace(initial, j, layout.make_field(layout.demand_mask, 0));

    std::vector<std::vector<std::uint64_t>> layers{{initial}};
    LayerBuilder builder(layout.total_bits());
    std::uint64_t states = 0;
    int solved_at = -1;
    std::uint64_t solved_key = 0;

    for (int u = 0; u < n && (solved_at < 0 || opts.all_layers); ++u) {
        const std::uint64_t nu = neighborhoods[u];
        for (std::uint64_t key : layers.back()) {
            builder.add(key);
            for (int j = 0; j < inst.d; ++j) {
                const std::uint64_t f = layout.field(key, j);
                if ((layout.demand(f) & nu) == 0) continue;
                if (layout.count_bits != 0 && layout.used(f) >= t) continue;
                // Teams in identical states are interchangeable; join the first.
                bool duplicate = false;
                for (int k = 0; k < j && !duplicate; ++k) duplicate = layout.field(key, k) == f;
                if (duplicate) continue;
                const int used = layout.count_bits != 0 ? layout.used(f) + 1 : 0;
                const std::uint64_t next = layout.replace(key, j, layout.make_field(layout.demand(f) & ~nu, used));
                builder.add(next);
                if (solved_at < 0 && layout.all_covered(next)) {
                    solved_at = u + 1;
                    solved_key = next;
                }
            }
        }
        layers.push_back(builder.take());
        states += layers.back().size();
    }

    Verdict v;
    v.stats.algorithm = "dp";
    v.stats.nodes = states;
    if (solved_at < 0) {
        v.answer = Answer::unsat;
        v.witness = BlockerSet{};
    } else {
        std::vector<UserSet> teams(inst.d);
        std::uint64_t cur = solved_key;
        for (int i = solved_at; i >= 1; --i) {
            const auto& prev_layer = layers[i - 1];
            if (contains(prev_layer, cur)) continue;
            const int u = i - 1;
            const std::uint64_t nu = neighborhoods[u];
            bool found = false;
            for (int j = 0; j < inst.d && !found; ++j) {
                const std::uint64_t f = layout.field(cur, j);
                if ((layout.demand(f) & nu) != 0) continue;
                if (layout.count_bits != 0 && layout.used(f) == 0) continue;
                const int used = layout.count_bits != 0 ? layout.used(f) - 1 : 0;
                for (std::uint64_t x = nu; x != 0 && !found; x = (x - 1) & nu) {
                    const std::uint64_t prev = layout.replace(cur, j, layout.make_field(layout.demand(f) | x, used));
                    if (contains(prev_layer, prev)) {
                        teams[j].push_back(u);
                        cur = prev;
                        found = true;
                    }
                }
            }
            if (!found) throw InternalError("dp_solve: no predecessor during reconstruction");
        }
        for (auto& team : teams) std::sort(team.begin(), team.end());
        std::sort(teams.begin(), teams.end());
        v.answer = Answer::sat;
        v.witness = TeamSet{std::move(teams)};
    }
    v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

} // namespace rcp
