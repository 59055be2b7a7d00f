#pragma once

#include <bit>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "rcp/policy.hpp"

namespace rcp::testing {

inline constexpr std::optional<int> kInf = std::nullopt;

// users[u] lists the 0-based resources of N(u); P = {0..m-1}.
inline Instance build(int m, std::vector<std::vector<int>> users, int s, int d, std::optional<int> t) {
    std::vector<ResourceSet> access;
    for (const auto& list : users) {
        ResourceSet rs;
        for (int r : list) rs.set(r);
        access.push_back(rs);
    }
    return make_instance(m, std::move(access), ResourceSet::prefix(m), s, d, t);
}

inline Instance build_normalized(int m, std::vector<std::vector<int>> users, int s, int d, std::optional<int> t) {
    return normalize(build(m, std::move(users), s, d, t));
}

// Instance whose users' neighborhoods are the base-2^m digits of `code`.
inline Instance from_code(int n, int m, std::uint64_t code, int s, int d, std::optional<int> t) {
    std::vector<ResourceSet> access;
    for (int u = 0; u < n; ++u) {
        access.push_back(ResourceSet::from_mask(code & ((1ULL << m) - 1)));
        code >>= m;
    }
    return normalize(make_instance(m, std::move(access), ResourceSet::prefix(m), s, d, t));
}

inline Instance random_small(std::mt19937_64& rng, int max_n, int max_p, int max_s, int max_d) {
    const int n = static_cast<int>(rng() % max_n) + 1;
    const int m = static_cast<int>(rng() % max_p) + 1;
    const double density = 0.2 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    std::vector<ResourceSet> access(n);
    for (auto& a : access)
        for (int r = 0; r < m; ++r)
            if (static_cast<double>(rng() % 1000) / 1000.0 < density) a.set(r);
    const int s = static_cast<int>(rng() % (max_s + 1));
    const int d = static_cast<int>(rng() % max_d) + 1;
    const int tpick = static_cast<int>(rng() % (m + 1));
    std::optional<int> t = tpick == m ? std::nullopt : std::optional<int>(tpick + 1);
    return normalize(make_instance(m, std::move(access), ResourceSet::prefix(m), s, d, t));
}

inline Instance with_s(Instance inst, int s) {
    inst.s = s;
    return inst;
}

} // namespace rcp::testing

namespace rcp::testing {

// Tries every assignment of users to {no team, team 1..d}. Independent of
// the library's search code; only usable for tiny n.
inline bool naive_s0(const Instance& inst) {
    const int n = inst.num_users();
    const int d = inst.d;
    std::vector<int> assign(n, 0);
    while (true) {
        std::vector<ResourceSet> cover(d);
        std::vector<int> size(d, 0);
        for (int u = 0; u < n; ++u)
            if (assign[u] > 0) {
                cover[assign[u] - 1] |= inst.access[u];
                ++size[assign[u] - 1];
            }
        bool ok = true;
        for (int j = 0; j < d && ok; ++j)
            ok = inst.target.is_subset_of(cover[j]) && (!inst.t || size[j] <= *inst.t);
        if (ok) return true;
        int i = 0;
        while (i < n && assign[i] == d) assign[i++] = 0;
        if (i == n) return false;
        ++assign[i];
    }
}

// Every subset of users of size <= s as a candidate blocker.
inline bool naive_rcp(const Instance& inst) {
    const int n = inst.num_users();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        if (std::popcount(mask) > inst.s) continue;
        UserSet keep;
        for (int u = 0; u < n; ++u)
            if (!((mask >> u) & 1)) keep.push_back(u);
        if (!naive_s0(restrict(inst, keep))) return false;
    }
    return true;
}

} // namespace rcp::testing

namespace rcp::testing {

// Calls fn(codes) for every non-decreasing sequence of n neighborhoods over
// m resources, i.e. every relation up to reordering of users.
template <typename Fn>
void for_each_multiset(int n, int m, Fn&& fn) {
    const int values = 1 << m;
    std::vector<int> codes(n, 0);
    while (true) {
        fn(std::as_const(codes));
        int i = n - 1;
        while (i >= 0 && codes[i] == values - 1) --i;
        if (i < 0) return;
        ++codes[i];
        for (int j = i + 1; j < n; ++j) codes[j] = codes[i];
    }
}

inline Instance from_codes(const std::vector<int>& codes, int m, int s, int d, std::optional<int> t) {
    std::vector<ResourceSet> access;
    for (int c : codes) access.push_back(ResourceSet::from_mask(static_cast<std::uint64_t>(c)));
    return normalize(make_instance(m, std::move(access), ResourceSet::prefix(m), s, d, t));
}

} // namespace rcp::testing
