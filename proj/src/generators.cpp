#include "rcp/generators.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace rcp {
namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string join(const std::vector<int>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

std::string join_sets(const std::vector<std::vector<int>>& sets) {
    std::string out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += ';';
        out += join(sets[i], ',');
    }
    return out;
}

// Assembles an Instance from named users/resources.
class Builder {
public:
    int resource(std::string id) {
        resource_ids_.push_back(std::move(id));
        if (static_cast<int>(resource_ids_.size()) > kMaxResources)
            throw BudgetExceeded("generator: more than " + std::to_string(kMaxResources) + " resources");
        return static_cast<int>(resource_ids_.size()) - 1;
    }
    int user(std::string id) {
        user_ids_.push_back(std::move(id));
        access_.emplace_back();
        return static_cast<int>(user_ids_.size()) - 1;
    }
    void grant(int u, int r) { access_[u].set(r); }

    Instance build(int s, int d, std::optional<int> t) {
        Instance inst;
        inst.user_ids = user_ids_;
        inst.resource_ids = resource_ids_;
        inst.access = access_;
        inst.target = ResourceSet::prefix(static_cast<int>(resource_ids_.size()));
        inst.s = s;
        inst.d = d;
        inst.t = t;
        inst.user_origin.resize(access_.size());
        std::iota(inst.user_origin.begin(), inst.user_origin.end(), 0);
        validate(inst);
        return inst;
    }

private:
    std::vector<std::string> user_ids_, resource_ids_;
    std::vector<ResourceSet> access_;
};

// Lexicographic k-subsets of {0..n-1}.
std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k > n || k < 0) return out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return out;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

const char* to_string(Expected e) {
    switch (e) {
    case Expected::sat: return "SAT";
    case Expected::unsat: return "UNSAT";
    case Expected::unknown: return "unknown";
    }
    return "?";
}

Expected parse_expected(const std::string& name) {
    for (Expected e : {Expected::sat, Expected::unsat, Expected::unknown})
        if (name == to_string(e)) return e;
    throw InputError("unknown expected answer '" + name + "'");
}

int min_hitting_set(const HittingSetSource& src) {
    for (int size = 0; size <= src.n; ++size)
        for (const auto& pick : combinations(src.n, size)) {
            bool hits_all = true;
            for (const auto& set : src.sets) {
                bool hit = false;
                for (int v : set) hit = hit || std::find(pick.begin(), pick.end(), v) != pick.end();
                if (!hit) {
                    hits_all = false;
                    break;
                }
            }
            if (hits_all) return size;
        }
    return src.n + 1;  // unreachable: V itself hits every nonempty set
}

int max_disjoint_hyperedges(const MatchingSource& src) {
    const int m = static_cast<int>(src.edges.size());
    if (m > 24) throw BudgetExceeded("max_disjoint_hyperedges: too many hyperedges");
    int best = 0;
    for (std::uint32_t pick = 0; pick < (1U << m); ++pick) {
        const int size = std::popcount(pick);
        if (size <= best) continue;
        std::vector<char> used(3 * static_cast<std::size_t>(src.n), 0);
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            if (!((pick >> j) & 1U)) continue;
            for (int axis = 0; axis < 3 && ok; ++axis) {
                char& slot = used[axis * src.n + src.edges[j][axis]];
                ok = !slot;
                slot = 1;
            }
        }
        if (ok) best = size;
    }
    return best;
}

bool has_domatic_partition(const Graph& g, int k) {
    if (k < 1) return true;
    if (k > g.n) return false;
    std::vector<std::vector<int>> closed(g.n);
    for (int v = 0; v < g.n; ++v) closed[v].push_back(v);
    for (auto [a, b] : g.edges) {
        closed[a].push_back(b);
        closed[b].push_back(a);
    }
    // Every vertex goes to one of k classes; extra vertices never hurt domination.
    std::vector<int> color(g.n, 0);
    while (true) {
        bool ok = true;
        for (int c = 0; c < k && ok; ++c)
            for (int v = 0; v < g.n && ok; ++v) {
                bool dominated = false;
                for (int w : closed[v]) dominated = dominated || color[w] == c;
                ok = dominated;
            }
        if (ok) return true;
        int i = 0;
        while (i < g.n && color[i] == k - 1) color[i++] = 0;
        if (i == g.n) return false;
        ++color[i];
    }
}

std::optional<int> min_set_cover(const SetCoverSource& src) {
    const int count = static_cast<int>(src.sets.size());
    for (int size = 0; size <= count; ++size)
        for (const auto& pick : combinations(count, size)) {
            std::vector<char> covered(src.universe, 0);
            for (int i : pick)
                for (int e : src.sets[i]) covered[e] = 1;
            if (std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; })) return size;
        }
    return std::nullopt;
}

GeneratedInstance from_hitting_set(const HittingSetSource& src) {
    if (src.sets.empty()) throw InputError("from_hitting_set: needs at least one set to fix delta");
    const int delta = static_cast<int>(src.sets.front().size());
    if (delta < 2) throw InputError("from_hitting_set: sets must have size delta >= 2");
    if (src.n < delta) throw InputError("from_hitting_set: fewer elements than delta");
    if (src.k < 0) throw InputError("from_hitting_set: k must be >= 0");
    for (const auto& set : src.sets) {
        if (static_cast<int>(set.size()) != delta) throw InputError("from_hitting_set: sets differ in size");
        std::vector<int> sorted = set;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
            sorted.back() >= src.n)
            throw InputError("from_hitting_set: set elements must be distinct and in range");
    }
    const int m = static_cast<int>(src.sets.size());

    Builder b;
    std::vector<int> vertex_users, set_users;
    for (int i = 0; i < src.n; ++i) vertex_users.push_back(b.user("uV" + std::to_string(i + 1)));
    for (int j = 0; j < m; ++j) set_users.push_back(b.user("uS" + std::to_string(j + 1)));

    // R^V: one resource per (delta-1)-subset Q of U^V, held by users outside Q.
    for (const auto& q : combinations(src.n, delta - 1)) {
        std::vector<int> named;
        for (int i : q) named.push_back(i + 1);
        const int r = b.resource("rV_" + join(named, '_'));
        for (int i = 0; i < src.n; ++i)
            if (std::find(q.begin(), q.end(), i) == q.end()) b.grant(vertex_users[i], r);
    }
    // R^S: P^j = {p^j_1..p^j_delta}; p^j_x goes to the user of S_j[x].
    std::vector<std::vector<int>> part(m);
    for (int j = 0; j < m; ++j)
        for (int x = 0; x < delta; ++x) {
            const int r = b.resource("p" + std::to_string(j + 1) + "_" + std::to_string(x + 1));
            part[j].push_back(r);
            b.grant(vertex_users[src.sets[j][x]], r);
        }
    const int star = b.resource("r*");
    for (int j = 0; j < m; ++j) {
        b.grant(set_users[j], star);
        for (int other = 0; other < m; ++other)
            if (other != j)
                for (int r : part[other]) b.grant(set_users[j], r);
    }

    GeneratedInstance out;
    out.instance = b.build(src.k, 1, delta + 1);
    out.provenance.family = "hitting-set";
    out.provenance.params = {{"n", std::to_string(src.n)},
                             {"delta", std::to_string(delta)},
                             {"sets", join_sets(src.sets)},
                             {"k", std::to_string(src.k)}};
    out.provenance.expected = min_hitting_set(src) <= src.k ? Expected::unsat : Expected::sat;
    return out;
}

GeneratedInstance from_3dm(const MatchingSource& src) {
    if (src.k < 1) throw InputError("from_3dm: k must be >= 1 (it becomes d)");
    for (const auto& e : src.edges)
        for (int v : e)
            if (v < 0 || v >= src.n) throw InputError("from_3dm: hyperedge element out of range");
    const int m = static_cast<int>(src.edges.size());
    const char* axes[3] = {"X", "Y", "Z"};

    Builder b;
    int per_edge[3][64] = {};
    if (m > 40) throw BudgetExceeded("from_3dm: too many hyperedges");
    for (int axis = 0; axis < 3; ++axis)
        for (int j = 0; j < m; ++j) per_edge[axis][j] = b.resource(std::string("r") + axes[axis] + "_" + std::to_string(j + 1));
    int axis_resource[3];
    for (int axis = 0; axis < 3; ++axis) axis_resource[axis] = b.resource(std::string("r") + axes[axis]);
    const int star = b.resource("r*");

    for (int axis = 0; axis < 3; ++axis)
        for (int i = 0; i < src.n; ++i) {
            const int u = b.user(std::string("u") + axes[axis] + std::to_string(i + 1));
            b.grant(u, axis_resource[axis]);
            for (int j = 0; j < m; ++j)
                if (src.edges[j][axis] == i) b.grant(u, per_edge[axis][j]);
        }
    for (int j = 0; j < m; ++j) {
        const int u = b.user("u*" + std::to_string(j + 1));
        b.grant(u, star);
        for (int axis = 0; axis < 3; ++axis)
            for (int h = 0; h < m; ++h)
                if (h != j) b.grant(u, per_edge[axis][h]);
    }

    GeneratedInstance out;
    out.instance = b.build(0, src.k, 4);
    std::vector<std::vector<int>> edges;
    for (const auto& e : src.edges) edges.push_back({e[0], e[1], e[2]});
    out.provenance.family = "3dm";
    out.provenance.params = {{"n", std::to_string(src.n)}, {"edges", join_sets(edges)}, {"k", std::to_string(src.k)}};
    out.provenance.expected = max_disjoint_hyperedges(src) >= src.k ? Expected::sat : Expected::unsat;
    return out;
}

GeneratedInstance from_domatic(const Graph& g, int k) {
    if (k < 1) throw InputError("from_domatic: k must be >= 1");
    if (g.n < 1) throw InputError("from_domatic: graph needs a vertex");
    Builder b;
    for (int v = 0; v < g.n; ++v) b.resource("v" + std::to_string(v + 1));
    for (int v = 0; v < g.n; ++v) {
        b.user("v" + std::to_string(v + 1));
        b.grant(v, v);
    }
    for (auto [x, y] : g.edges) {
        if (x < 0 || y < 0 || x >= g.n || y >= g.n || x == y) throw InputError("from_domatic: bad edge");
        b.grant(x, y);
        b.grant(y, x);
    }
    GeneratedInstance out;
    out.instance = b.build(0, k, std::nullopt);
    std::vector<std::vector<int>> edges;
    for (auto [x, y] : g.edges) edges.push_back({x, y});
    out.provenance.family = "domatic";
    out.provenance.params = {{"n", std::to_string(g.n)}, {"edges", join_sets(edges)}, {"k", std::to_string(k)}};
    out.provenance.expected = has_domatic_partition(g, k) ? Expected::sat : Expected::unsat;
    return out;
}

GeneratedInstance from_set_cover(const SetCoverSource& src) {
    if (src.k < 1) throw InputError("from_set_cover: k must be >= 1 (it becomes t)");
    if (src.universe < 1) throw InputError("from_set_cover: empty universe");
    Builder b;
    for (int e = 0; e < src.universe; ++e) b.resource("e" + std::to_string(e + 1));
    for (std::size_t i = 0; i < src.sets.size(); ++i) {
        const int u = b.user("S" + std::to_string(i + 1));
        for (int e : src.sets[i]) {
            if (e < 0 || e >= src.universe) throw InputError("from_set_cover: element out of range");
            b.grant(u, e);
        }
    }
    GeneratedInstance out;
    out.instance = b.build(0, 1, src.k);
    out.provenance.family = "set-cover";
    out.provenance.params = {
        {"universe", std::to_string(src.universe)}, {"sets", join_sets(src.sets)}, {"k", std::to_string(src.k)}};
    const auto best = min_set_cover(src);
    out.provenance.expected = best && *best <= src.k ? Expected::sat : Expected::unsat;
    return out;
}

GeneratedInstance random_instance(std::uint64_t seed, int n, int m, double density, int s, int d,
                                  std::optional<int> t) {
    if (!(density >= 0.0 && density <= 1.0)) throw InputError("random_instance: density must lie in [0, 1]");
    if (n < 0 || m < 1) throw InputError("random_instance: needs n >= 0 and m >= 1");
    std::mt19937_64 rng(seed);
    Builder b;
    for (int r = 0; r < m; ++r) b.resource("r" + std::to_string(r + 1));
    for (int u = 0; u < n; ++u) {
        b.user("u" + std::to_string(u + 1));
        for (int r = 0; r < m; ++r)
            if (unit(rng) < density) b.grant(u, r);
    }
    GeneratedInstance out;
    out.instance = b.build(s, d, t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", density);
    out.provenance.family = "random";
    out.provenance.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"density", buf}};
    out.provenance.seed = seed;
    return out;
}

HittingSetSource random_hitting_set(std::mt19937_64& rng, int n, int delta, int num_sets, int k) {
    HittingSetSource src{n, {}, k};
    for (int j = 0; j < num_sets; ++j) {
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<int> set;
        for (int x = 0; x < delta; ++x) {
            const auto pick = below(rng, pool.size());
            set.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        src.sets.push_back(std::move(set));
    }
    return src;
}

MatchingSource random_matching(std::mt19937_64& rng, int n, int num_edges, int k) {
    MatchingSource src{n, {}, k};
    for (int j = 0; j < num_edges; ++j) {
        std::array<int, 3> e{};
        for (int& v : e) v = static_cast<int>(below(rng, n));
        src.edges.push_back(e);
    }
    return src;
}

Graph random_graph(std::mt19937_64& rng, int n, double edge_probability) {
    Graph g{n, {}};
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (unit(rng) < edge_probability) g.edges.emplace_back(a, b);
    return g;
}

SetCoverSource random_set_cover(std::mt19937_64& rng, int universe, int num_sets, int k) {
    SetCoverSource src{universe, {}, k};
    for (int i = 0; i < num_sets; ++i) {
        std::vector<int> set;
        for (int e = 0; e < universe; ++e)
            if (below(rng, 3) == 0) set.push_back(e);
        src.sets.push_back(std::move(set));
    }
    return src;
}

} // namespace rcp
