#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rcp/policy.hpp"

// Instances built from the reductions of Hitting Set, 3-Dimensional Matching,
// Domatic Partition and Set Cover, each labelled with the answer obtained by
// brute-forcing the source problem. Random instances use std::mt19937_64,
// whose output sequence is fixed by the C++ standard.
namespace rcp {

enum class Expected { sat, unsat, unknown };

const char* to_string(Expected e);
Expected parse_expected(const std::string& name);

struct Provenance {
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<std::uint64_t> seed;
    Expected expected = Expected::unknown;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct GeneratedInstance {
    Instance instance;
    Provenance provenance;

    Expected expected() const { return provenance.expected; }
};

// Elements are 0-based indices into [0, n).
struct HittingSetSource {
    int n = 0;
    std::vector<std::vector<int>> sets;  // every set has the same size delta >= 2
    int k = 0;
};

struct MatchingSource {
    int n = 0;
    std::vector<std::array<int, 3>> edges;  // (x, y, z)
    int k = 1;
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

struct SetCoverSource {
    int universe = 0;
    std::vector<std::vector<int>> sets;
    int k = 1;
};

// Source-problem brute force, independent of the RCP solvers.
int min_hitting_set(const HittingSetSource& src);
int max_disjoint_hyperedges(const MatchingSource& src);
bool has_domatic_partition(const Graph& g, int k);
std::optional<int> min_set_cover(const SetCoverSource& src);  // nullopt: universe not coverable

// d = 1, t = delta + 1, s = k. Expected UNSAT iff a hitting set of size <= k exists.
GeneratedInstance from_hitting_set(const HittingSetSource& src);
// s = 0, t = 4, d = k, one user per hyperedge in U_*. Expected SAT iff k disjoint hyperedges exist.
GeneratedInstance from_3dm(const MatchingSource& src);
// Users and resources are the vertices, N(v) the closed neighborhood; s = 0, t unbounded.
GeneratedInstance from_domatic(const Graph& g, int k);
// One user per set; s = 0, d = 1, t = k.
GeneratedInstance from_set_cover(const SetCoverSource& src);

// Each (u, r) is present iff (draw >> 11) * 2^-53 < density, drawing users
// in order and resources in order within a user. P = R; expected unknown.
GeneratedInstance random_instance(std::uint64_t seed, int n, int m, double density, int s, int d,
                                  std::optional<int> t);

// Seeded random source problems for the reduction families.
HittingSetSource random_hitting_set(std::mt19937_64& rng, int n, int delta, int num_sets, int k);
MatchingSource random_matching(std::mt19937_64& rng, int n, int num_edges, int k);
Graph random_graph(std::mt19937_64& rng, int n, double edge_probability);
SetCoverSource random_set_cover(std::mt19937_64& rng, int universe, int num_sets, int k);

} // namespace rcp
