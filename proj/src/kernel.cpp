#include "rcp/kernel.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace rcp {
namespace {

void require_kernel_input(const Instance& inst) {
    if (inst.s != 0) throw PreconditionViolation("kernelize: requires s = 0");
    if (inst.t && *inst.t < inst.p())
        throw PreconditionViolation(
            "kernelize: requires t >= |P|; finite-t instances admit no polynomial kernel in |P| + t in general");
    if (inst.target != ResourceSet::prefix(inst.num_resources()))
        throw PreconditionViolation("kernelize: requires P = R (normalize first)");
}

// Removes resources in `drop` from R and P, renumbering the rest.
Instance drop_resources(const Instance& inst, const ResourceSet& drop) {
    std::vector<int> new_index(inst.num_resources(), -1);
    Instance out = inst;
    out.resource_ids.clear();
    for (int r = 0; r < inst.num_resources(); ++r)
        if (!drop.test(r)) {
            new_index[r] = static_cast<int>(out.resource_ids.size());
            out.resource_ids.push_back(inst.resource_ids[r]);
        }
    auto remap = [&](const ResourceSet& rs) {
        ResourceSet mapped;
        for (int r : rs.members())
            if (new_index[r] >= 0) mapped.set(new_index[r]);
        return mapped;
    };
    for (auto& n : out.access) n = remap(n);
    out.target = remap(inst.target);
    return out;
}

std::vector<std::string> ids_of(const std::vector<std::string>& ids, const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int i : idx) out.push_back(ids[i]);
    return out;
}

} // namespace

const char* to_string(KernelRule rule) {
    switch (rule) {
    case KernelRule::strip_empty: return "strip-empty";
    case KernelRule::expansion: return "expansion";
    case KernelRule::resources_exhausted: return "resources-exhausted";
    }
    return "?";
}

KernelRule parse_kernel_rule(const std::string& name) {
    for (KernelRule r : {KernelRule::strip_empty, KernelRule::expansion, KernelRule::resources_exhausted})
        if (name == to_string(r)) return r;
    throw InputError("unknown kernel rule '" + name + "'");
}

bool is_valid_expansion(const Instance& inst, const ExpansionWitness& w, int d) {
    if (w.resources.empty() || w.users.empty() || d < 1) return false;
    if (!w.resources.is_subset_of(inst.target)) return false;
    for (int u : w.users) {
        if (u < 0 || u >= inst.num_users()) return false;
        if (!(inst.access[u] & inst.target).is_subset_of(w.resources)) return false;
    }
    std::map<int, int> per_resource;
    std::vector<int> endpoints;
    for (auto [r, u] : w.pairs) {
        if (!w.resources.test(r) || !std::binary_search(w.users.begin(), w.users.end(), u)) return false;
        if (!inst.access[u].test(r)) return false;
        ++per_resource[r];
        endpoints.push_back(u);
    }
    for (int r : w.resources.members())
        if (per_resource[r] != d) return false;
    std::sort(endpoints.begin(), endpoints.end());
    if (std::adjacent_find(endpoints.begin(), endpoints.end()) != endpoints.end()) return false;
    return static_cast<int>(endpoints.size()) == d * w.resources.count();
}

KernelResult rule1_strip(const Instance& inst) {
    UserSet keep, gone;
    for (int u = 0; u < inst.num_users(); ++u)
        ((inst.access[u] & inst.target).empty() ? gone : keep).push_back(u);
    KernelResult result{restrict(inst, keep), {}};
    if (!gone.empty())
        result.trace.steps.push_back(KernelStep{KernelRule::strip_empty, ids_of(inst.user_ids, gone), {}, {}});
    return result;
}

std::optional<ExpansionWitness> find_d_expansion(const Instance& inst, int d) {
    const std::vector<int> resources = inst.target.members();
    const int a = static_cast<int>(resources.size());
    const int n = inst.num_users();
    if (a == 0 || n < d * a) return std::nullopt;
    for (int u = 0; u < n; ++u)
        if ((inst.access[u] & inst.target).empty())
            throw PreconditionViolation("find_d_expansion: a user has no resource in P; strip it first");

    // Vertices: copy i of resource k is k*d + i; user u is a*d + u.
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    using Vertex = boost::graph_traits<Graph>::vertex_descriptor;
    const int copies = a * d;
    Graph g(copies + n);
    for (int k = 0; k < a; ++k)
        for (int u = 0; u < n; ++u)
            if (inst.access[u].test(resources[k]))
                for (int i = 0; i < d; ++i) boost::add_edge(k * d + i, copies + u, g);

    std::vector<Vertex> mate(copies + n);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    const Vertex none = boost::graph_traits<Graph>::null_vertex();

    // Alternating reachability from unmatched copies: copy -> user along
    // non-matching edges, user -> copy along its matching edge.
    std::vector<char> reached(copies + n, 0);
    std::queue<int> frontier;
    for (int c = 0; c < copies; ++c)
        if (mate[c] == none) {
            reached[c] = 1;
            frontier.push(c);
        }
    while (!frontier.empty()) {
        const int c = frontier.front();
        frontier.pop();
        for (auto [it, end] = boost::adjacent_vertices(c, g); it != end; ++it) {
            const int user = static_cast<int>(*it);
            if (reached[user] || mate[c] == *it) continue;
            reached[user] = 1;
            if (mate[user] != none && !reached[mate[user]]) {
                reached[mate[user]] = 1;
                frontier.push(static_cast<int>(mate[user]));
            }
        }
    }

    ExpansionWitness w;
    for (int k = 0; k < a; ++k)
        if (!reached[k * d]) {
            w.resources.set(resources[k]);
            for (int i = 0; i < d; ++i) {
                const int c = k * d + i;
                if (mate[c] == none || reached[c])
                    throw InternalError("find_d_expansion: copies of one resource disagree");
                w.pairs.emplace_back(resources[k], static_cast<int>(mate[c]) - copies);
            }
        }
    for (int u = 0; u < n; ++u)
        if (!reached[copies + u]) w.users.push_back(u);
    std::sort(w.pairs.begin(), w.pairs.end());

    if (!is_valid_expansion(inst, w, d)) throw InternalError("find_d_expansion: extracted witness is invalid");
    return w;
}

KernelResult rule2_apply(const Instance& inst, const ExpansionWitness& w) {
    if (!is_valid_expansion(inst, w, inst.d)) throw PreconditionViolation("rule2_apply: invalid expansion witness");
    KernelStep step;
    step.rule = KernelRule::expansion;
    step.deleted_users = ids_of(inst.user_ids, w.users);
    step.deleted_resources = ids_of(inst.resource_ids, w.resources.members());
    for (auto [r, u] : w.pairs) step.pairs.emplace_back(inst.resource_ids[r], inst.user_ids[u]);

    Instance out = drop_resources(without(inst, w.users), w.resources);
    return KernelResult{std::move(out), KernelTrace{{std::move(step)}}};
}

KernelResult kernelize(const Instance& inst) {
    require_kernel_input(inst);
    KernelResult result{inst, {}};
    auto absorb = [&](KernelResult&& next) {
        result.instance = std::move(next.instance);
        for (auto& step : next.trace.steps) result.trace.steps.push_back(std::move(step));
    };
    while (true) {
        absorb(rule1_strip(result.instance));
        const Instance& cur = result.instance;
        if (cur.p() == 0) {
            result.trace.steps.push_back(KernelStep{KernelRule::resources_exhausted, {}, {}, {}});
            break;
        }
        if (cur.num_users() < cur.d * cur.p()) break;
        auto w = find_d_expansion(cur, cur.d);
        if (!w) throw InternalError("kernelize: no expansion above the size threshold");
        absorb(rule2_apply(cur, *w));
    }
    return result;
}

Instance replay(const Instance& original, const KernelTrace& trace) {
    Instance cur = original;
    for (const auto& step : trace.steps) {
        std::vector<int> users;
        for (const auto& id : step.deleted_users) {
            auto it = std::find(cur.user_ids.begin(), cur.user_ids.end(), id);
            if (it == cur.user_ids.end()) throw InputError("replay: unknown user '" + id + "'");
            users.push_back(static_cast<int>(it - cur.user_ids.begin()));
        }
        std::sort(users.begin(), users.end());
        ResourceSet resources;
        for (const auto& id : step.deleted_resources) {
            auto it = std::find(cur.resource_ids.begin(), cur.resource_ids.end(), id);
            if (it == cur.resource_ids.end()) throw InputError("replay: unknown resource '" + id + "'");
            resources.set(static_cast<int>(it - cur.resource_ids.begin()));
        }
        cur = drop_resources(without(cur, users), resources);
    }
    return cur;
}

TeamSet lift_teams(const Instance& original, const KernelTrace& trace, const Instance& kernel,
                   const TeamSet& kernel_teams) {
    std::map<std::string, int> index;
    for (int u = 0; u < original.num_users(); ++u) index[original.user_ids[u]] = u;
    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end()) throw InputError("lift_teams: unknown user '" + id + "'");
        return it->second;
    };

    std::vector<UserSet> teams;
    for (const auto& team : kernel_teams.teams) {
        UserSet lifted;
        for (int u : team) lifted.push_back(lookup(kernel.user_ids[u]));
        teams.push_back(std::move(lifted));
    }
    teams.resize(original.d);

    for (auto step = trace.steps.rbegin(); step != trace.steps.rend(); ++step) {
        if (step->rule != KernelRule::expansion) continue;
        std::map<std::string, int> seen;
        for (const auto& [resource, user] : step->pairs) {
            const int i = seen[resource]++;
            if (i >= original.d) throw InputError("lift_teams: resource matched more than d times");
            teams[i].push_back(lookup(user));
        }
    }

    for (auto& team : teams) {
        std::sort(team.begin(), team.end());
        team.erase(std::unique(team.begin(), team.end()), team.end());
        for (auto it = team.end(); it != team.begin();) {
            --it;
            UserSet rest(team.begin(), it);
            rest.insert(rest.end(), it + 1, team.end());
            if (original.target.is_subset_of(neighborhood(original, rest))) it = team.erase(it);
        }
    }
    std::sort(teams.begin(), teams.end());
    return TeamSet{std::move(teams)};
}

} // namespace rcp
