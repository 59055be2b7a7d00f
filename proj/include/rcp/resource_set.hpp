#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace rcp {

inline constexpr int kMaxResources = 128;

// Fixed-capacity bitset over resource indices [0, kMaxResources).
class ResourceSet {
public:
    constexpr ResourceSet() = default;

    ResourceSet(std::initializer_list<int> members) {
        for (int r : members) set(r);
    }

    static ResourceSet from_mask(std::uint64_t mask) {
        ResourceSet rs;
        rs.words_[0] = mask;
        return rs;
    }

    // Resources {0, ..., count-1}.
    static ResourceSet prefix(int count) {
        ResourceSet rs;
        for (int w = 0; w < kWords; ++w) {
            int lo = w * 64;
            if (count >= lo + 64) {
                rs.words_[w] = ~std::uint64_t{0};
            } else if (count > lo) {
                rs.words_[w] = (std::uint64_t{1} << (count - lo)) - 1;
            }
        }
        return rs;
    }

    void set(int r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
    void reset(int r) { words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }
    bool test(int r) const { return (words_[r >> 6] >> (r & 63)) & 1U; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }
    bool intersects(const ResourceSet& o) const {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }
    bool is_subset_of(const ResourceSet& o) const {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }
    // Highest member + 1, or 0 when empty.
    int extent() const {
        for (int w = kWords - 1; w >= 0; --w)
            if (words_[w] != 0) return w * 64 + 64 - std::countl_zero(words_[w]);
        return 0;
    }
    // Lowest member, or -1 when empty.
    int first() const {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] != 0) return w * 64 + std::countr_zero(words_[w]);
        return -1;
    }

    // Low 64 bits; callers check extent() <= 64 first.
    std::uint64_t low_mask() const { return words_[0]; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int w = 0; w < kWords; ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                out.push_back(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
        return out;
    }

    ResourceSet& operator|=(const ResourceSet& o) {
        for (int w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
        return *this;
    }
    ResourceSet& operator&=(const ResourceSet& o) {
        for (int w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
        return *this;
    }
    // Set difference.
    ResourceSet& operator-=(const ResourceSet& o) {
        for (int w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
        return *this;
    }
    friend ResourceSet operator|(ResourceSet a, const ResourceSet& b) { return a |= b; }
    friend ResourceSet operator&(ResourceSet a, const ResourceSet& b) { return a &= b; }
    friend ResourceSet operator-(ResourceSet a, const ResourceSet& b) { return a -= b; }

    friend bool operator==(const ResourceSet&, const ResourceSet&) = default;

    // Orders by numeric value, most significant word first.
    friend bool operator<(const ResourceSet& a, const ResourceSet& b) {
        for (int w = kWords - 1; w >= 0; --w)
            if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
        return false;
    }

    std::size_t hash() const {
        std::size_t h = 0;
        for (auto w : words_) h = h * 0x9e3779b97f4a7c15ULL ^ std::hash<std::uint64_t>{}(w);
        return h;
    }

private:
    static constexpr int kWords = kMaxResources / 64;
    std::array<std::uint64_t, kWords> words_{};
};

struct ResourceSetHash {
    std::size_t operator()(const ResourceSet& rs) const { return rs.hash(); }
};

} // namespace rcp
