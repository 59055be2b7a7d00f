#include <algorithm>
#include <chrono>

#include "rcp/s0_solvers.hpp"

namespace rcp {

int ConfigCountVector::total() const {
    int sum = 0;
    for (const auto& [c, x] : counts) sum += x;
    return sum;
}

std::vector<Configuration> enumerate_configurations(const Instance& inst, std::size_t max_configurations) {
    require_normalized(inst, "enumerate_configurations");
    const ResourceSet full = inst.target;
    const int t = *inst.t;

    std::vector<ResourceSet> classes;
    for (const auto& [c, users] : class_partition(inst).classes)
        if (!c.empty() && !users.empty()) classes.push_back(c);
    const int k = static_cast<int>(classes.size());

    // suffix_union[i] = union of classes[i..]
    std::vector<ResourceSet> suffix_union(k + 1);
    for (int i = k - 1; i >= 0; --i) suffix_union[i] = suffix_union[i + 1] | classes[i];

    std::vector<Configuration> out;
    std::vector<ResourceSet> chosen;
    auto dfs = [&](auto&& self, int from, const ResourceSet& covered) -> void {
        if (!chosen.empty() && covered == full) {
            out.push_back(Configuration{chosen});
            if (out.size() > max_configurations)
                throw BudgetExceeded("enumerate_configurations: more than " + std::to_string(max_configurations) +
                                     " configurations");
        }
        if (static_cast<int>(chosen.size()) == t) return;
        for (int i = from; i < k; ++i) {
            if (!full.is_subset_of(covered | suffix_union[i])) return;
            chosen.push_back(classes[i]);
            self(self, i + 1, covered | classes[i]);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, ResourceSet{});

    std::stable_sort(out.begin(), out.end(), [](const Configuration& a, const Configuration& b) {
        return a.parts.size() < b.parts.size();
    });
    return out;
}

std::optional<ConfigCountVector> ilp_feasible(std::span<const Configuration> configs,
                                              const ClassCapacities& capacities, int d, std::uint64_t* nodes) {
    const int num_configs = static_cast<int>(configs.size());

    // Dense class indices so the search works on plain arrays.
    std::vector<ResourceSet> class_keys;
    for (const auto& c : configs)
        for (const auto& part : c.parts) class_keys.push_back(part);
    std::sort(class_keys.begin(), class_keys.end());
    class_keys.erase(std::unique(class_keys.begin(), class_keys.end()), class_keys.end());
    auto class_index = [&](const ResourceSet& c) {
        return static_cast<int>(std::lower_bound(class_keys.begin(), class_keys.end(), c) - class_keys.begin());
    };

    std::vector<int> remaining_cap(class_keys.size());
    for (std::size_t i = 0; i < class_keys.size(); ++i) {
        auto it = capacities.find(class_keys[i]);
        remaining_cap[i] = it == capacities.end() ? 0 : std::max(it->second, 0);
    }
    std::vector<std::vector<int>> parts(num_configs);
    for (int i = 0; i < num_configs; ++i)
        for (const auto& part : configs[i].parts) parts[i].push_back(class_index(part));

    // Every configuration covers every resource, so each remaining team
    // needs one fresh user from some class containing resource r.
    ResourceSet universe;
    for (const auto& c : class_keys) universe |= c;
    const std::vector<int> resources = universe.members();
    std::vector<std::vector<int>> classes_with(resources.size());
    for (std::size_t r = 0; r < resources.size(); ++r)
        for (std::size_t c = 0; c < class_keys.size(); ++c)
            if (class_keys[c].test(resources[r])) classes_with[r].push_back(static_cast<int>(c));

    auto supply_ok = [&](int remaining) {
        for (const auto& cls : classes_with) {
            int supply = 0;
            for (int c : cls) supply += remaining_cap[c];
            if (supply < remaining) return false;
        }
        return true;
    };

    std::vector<int> x(num_configs, 0);
    std::uint64_t visited = 0;
    auto dfs = [&](auto&& self, int i, int remaining) -> bool {
        ++visited;
        if (remaining == 0) return true;
        if (i == num_configs || !supply_ok(remaining)) return false;
        int most = remaining;
        for (int c : parts[i]) most = std::min(most, remaining_cap[c]);
        for (int count = most; count >= 0; --count) {
            for (int c : parts[i]) remaining_cap[c] -= count;
            x[i] = count;
            const bool ok = self(self, i + 1, remaining - count);
            for (int c : parts[i]) remaining_cap[c] += count;
            if (ok) return true;
        }
        x[i] = 0;
        return false;
    };
    const bool feasible = d >= 0 && dfs(dfs, 0, d);
    if (nodes) *nodes += visited;
    if (!feasible) return std::nullopt;

    ConfigCountVector result;
    for (int i = 0; i < num_configs; ++i)
        if (x[i] > 0) result.counts.emplace_back(configs[i], x[i]);
    return result;
}

TeamSet reconstruct_teams(const Instance& inst, const ConfigCountVector& x) {
    const ClassPartition cp = class_partition(inst);
    std::map<ResourceSet, std::size_t> cursor;
    TeamSet out;
    for (const auto& [config, count] : x.counts) {
        for (int rep = 0; rep < count; ++rep) {
            UserSet team;
            for (const auto& part : config.parts) {
                const UserSet& members = cp.members(part);
                std::size_t& next = cursor[part];
                if (next >= members.size())
                    throw InternalError("reconstruct_teams: class exhausted; count vector is infeasible");
                team.push_back(members[next++]);
            }
            std::sort(team.begin(), team.end());
            out.teams.push_back(std::move(team));
        }
    }
    std::sort(out.teams.begin(), out.teams.end());
    return out;
}

Verdict ilp_solve(const Instance& inst, const IlpOptions& opts) {
    require_normalized(inst, "ilp_solve");
    const auto start = std::chrono::steady_clock::now();
    if (inst.p() >= 31 || (1LL << inst.p()) > opts.max_classes)
        throw BudgetExceeded("ilp_solve: 2^p = 2^" + std::to_string(inst.p()) + " classes exceeds the limit of " +
                             std::to_string(opts.max_classes));

    const auto configs = enumerate_configurations(inst, opts.max_configurations);
    ClassCapacities capacities;
    for (const auto& [c, users] : class_partition(inst).classes) capacities[c] = static_cast<int>(users.size());

    Verdict v;
    v.stats.algorithm = "ilp";
    auto x = ilp_feasible(configs, capacities, inst.d, &v.stats.nodes);
    if (x) {
        v.answer = Answer::sat;
        v.witness = reconstruct_teams(inst, *x);
    } else {
        v.answer = Answer::unsat;
        v.witness = BlockerSet{};
    }
    v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

} // namespace rcp
