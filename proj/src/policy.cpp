#include "rcp/policy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rcp {

const char* to_string(Answer a) { return a == Answer::sat ? "SAT" : "UNSAT"; }

Instance make_instance(int num_resources, std::vector<ResourceSet> access, ResourceSet target, int s,
                       int d, std::optional<int> t) {
    Instance inst;
    inst.access = std::move(access);
    inst.target = target;
    inst.s = s;
    inst.d = d;
    inst.t = t;
    for (int u = 0; u < inst.num_users(); ++u) inst.user_ids.push_back("u" + std::to_string(u));
    for (int r = 0; r < num_resources; ++r) inst.resource_ids.push_back("r" + std::to_string(r));
    inst.user_origin.resize(inst.access.size());
    std::iota(inst.user_origin.begin(), inst.user_origin.end(), 0);
    validate(inst);
    return inst;
}

void validate(const Instance& inst) {
    const int m = inst.num_resources();
    if (m > kMaxResources)
        throw InputError("too many resources: " + std::to_string(m) + " (limit " +
                         std::to_string(kMaxResources) + ")");
    if (inst.user_ids.size() != inst.access.size() || inst.user_origin.size() != inst.access.size())
        throw InputError("user id, access and origin tables differ in length");
    for (int u = 0; u < inst.num_users(); ++u)
        if (inst.access[u].extent() > m)
            throw InputError("user " + inst.user_ids[u] + " references an undeclared resource");
    if (inst.target.extent() > m) throw InputError("P references an undeclared resource");
    if (inst.s < 0) throw InputError("s must be >= 0");
    if (inst.d < 1) throw InputError("d must be >= 1");
    if (inst.t && *inst.t < 1) throw InputError("t must be >= 1");
}

bool is_normalized(const Instance& inst) {
    return inst.target == ResourceSet::prefix(inst.num_resources()) && inst.p() >= 1 && inst.t &&
           *inst.t <= inst.p();
}

void require_normalized(const Instance& inst, const char* who) {
    if (!is_normalized(inst))
        throw PreconditionViolation(std::string(who) + ": instance is not normalized");
}

const UserSet& ClassPartition::members(const ResourceSet& c) const {
    static const UserSet kEmpty;
    auto it = classes.find(c);
    return it == classes.end() ? kEmpty : it->second;
}

int ClassPartition::size_of(const ResourceSet& c) const {
    return static_cast<int>(members(c).size());
}

ResourceSet neighborhood(const Instance& inst, std::span<const int> users) {
    ResourceSet out;
    for (int u : users) out |= inst.access[u];
    return out;
}

Instance restrict(const Instance& inst, std::span<const int> keep) {
    Instance out;
    out.resource_ids = inst.resource_ids;
    out.target = inst.target;
    out.s = inst.s;
    out.d = inst.d;
    out.t = inst.t;
    out.access.reserve(keep.size());
    for (int u : keep) {
        out.user_ids.push_back(inst.user_ids[u]);
        out.access.push_back(inst.access[u]);
        out.user_origin.push_back(inst.user_origin[u]);
    }
    return out;
}

UserSet complement(int num_users, std::span<const int> users) {
    std::vector<char> drop(num_users, 0);
    for (int u : users) drop[u] = 1;
    UserSet out;
    for (int u = 0; u < num_users; ++u)
        if (!drop[u]) out.push_back(u);
    return out;
}

Instance without(const Instance& inst, std::span<const int> removed) {
    return restrict(inst, complement(inst.num_users(), removed));
}

Instance normalize(const Instance& inst) {
    validate(inst);
    const int p = inst.p();
    if (p == 0) throw InputError("degenerate instance: the resource set P is empty");

    std::vector<int> kept = inst.target.members();
    Instance out;
    out.user_ids = inst.user_ids;
    out.user_origin = inst.user_origin;
    out.s = inst.s;
    out.d = inst.d;
    out.t = std::min(inst.t.value_or(p), p);
    out.target = ResourceSet::prefix(p);
    for (int r : kept) out.resource_ids.push_back(inst.resource_ids[r]);
    out.access.reserve(inst.access.size());
    for (const auto& n : inst.access) {
        ResourceSet projected;
        for (int i = 0; i < p; ++i)
            if (n.test(kept[i])) projected.set(i);
        out.access.push_back(projected);
    }
    return out;
}

ClassPartition class_partition(const Instance& inst) {
    ClassPartition cp;
    for (int u = 0; u < inst.num_users(); ++u) cp.classes[inst.access[u] & inst.target].push_back(u);
    return cp;
}

bool is_team_set(const Instance& inst, const TeamSet& teams, std::span<const int> avoid) {
    if (static_cast<int>(teams.teams.size()) != inst.d) return false;
    std::vector<char> used(inst.num_users(), 0);
    for (int u : avoid)
        if (u >= 0 && u < inst.num_users()) used[u] = 1;
    for (const auto& team : teams.teams) {
        if (inst.t && static_cast<int>(team.size()) > *inst.t) return false;
        for (int u : team) {
            if (u < 0 || u >= inst.num_users() || used[u]) return false;
            used[u] = 1;
        }
        if (!inst.target.is_subset_of(neighborhood(inst, team))) return false;
    }
    return true;
}

} // namespace rcp
