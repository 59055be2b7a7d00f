#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rcp/policy.hpp"

// Exact solvers for res(P, 0, d, t). All of them require a normalized
// instance and ignore s.
namespace rcp {

struct DpOptions {
    int max_bits = 24;  // limit on d * p
    bool all_layers = false;  // keep expanding after a solution appears (for state counts)
};

// Layered reachability over (team demands, team sizes) with user i deciding
// at layer i. stats.nodes counts the states stored in layers 1..n.
Verdict dp_solve(const Instance& inst, const DpOptions& opts = {});

// A staffing pattern for one team: distinct neighborhood classes, one user
// drawn from each, whose union is P. Parts are kept in increasing order.
struct Configuration {
    std::vector<ResourceSet> parts;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct ConfigCountVector {
    std::vector<std::pair<Configuration, int>> counts;  // nonzero entries only

    int total() const;
};

// Configurations built from nonempty, populated classes, ordered by number
// of parts and then lexicographically by part value.
std::vector<Configuration> enumerate_configurations(const Instance& inst,
                                                    std::size_t max_configurations = 200000);

using ClassCapacities = std::map<ResourceSet, int>;

// First vector (depth-first, larger counts first) with sum d whose per-class
// usage stays within capacity.
std::optional<ConfigCountVector> ilp_feasible(std::span<const Configuration> configs,
                                              const ClassCapacities& capacities, int d,
                                              std::uint64_t* nodes = nullptr);

// Draws the lowest-index unused user of each part's class.
TeamSet reconstruct_teams(const Instance& inst, const ConfigCountVector& x);

struct IlpOptions {
    int max_classes = 4096;
    std::size_t max_configurations = 200000;
};

Verdict ilp_solve(const Instance& inst, const IlpOptions& opts = {});

struct SetCoverOptions {
    int max_p = 24;
};

// d = 1 only: minimum number of users covering P, via DP over covered subsets.
Verdict setcover_d1(const Instance& inst, const SetCoverOptions& opts = {});

} // namespace rcp
