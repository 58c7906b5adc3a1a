// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctv {

using mask_t = std::uint64_t;

/// A coalition over voters 1..n, stored as a bitmask (bit i-1 = voter i).
/// n is capped at 62 so every subset of the universe fits a mask.
struct Coalition {
    mask_t mask = 0;
    int n = 0;

    static constexpr int max_voters = 62;

    Coalition() = default;
    Coalition(mask_t m, int voters) : mask(m), n(voters) {
        if (voters < 0 || voters > max_voters)
            throw std::invalid_argument("voter count out of range (0..62)");
        if (m >> voters)
            throw std::invalid_argument("coalition mask uses voters beyond n");
    }

    static Coalition empty(int n) { return Coalition(0, n); }
    static Coalition grand(int n) { return Coalition(full_mask(n), n); }
    static mask_t full_mask(int n) {
        if (n < 0 || n > max_voters)
            throw std::invalid_argument("voter count out of range (0..62)");
        return n == 0 ? 0 : (~mask_t{0} >> (64 - n));
    }

    bool contains(int voter) const { return (mask >> (voter - 1)) & 1; }
    int size() const { return std::popcount(mask); }
    bool is_empty() const { return mask == 0; }

    bool subset_of(const Coalition& o) const { return (mask & o.mask) == mask; }
    bool superset_of(const Coalition& o) const { return o.subset_of(*this); }

    Coalition with(int voter) const { return Coalition(mask | (mask_t{1} << (voter - 1)), n); }
    Coalition without(int voter) const { return Coalition(mask & ~(mask_t{1} << (voter - 1)), n); }
    Coalition unite(const Coalition& o) const { return Coalition(mask | o.mask, n); }
    Coalition intersect(const Coalition& o) const { return Coalition(mask & o.mask, n); }
    Coalition complement() const { return Coalition(full_mask(n) ^ mask, n); }

    std::vector<int> voters() const {
        std::vector<int> out;
        for (int i = 1; i <= n; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    friend bool operator==(const Coalition& a, const Coalition& b) {
        return a.mask == b.mask && a.n == b.n;
    }
    // canonical order: ascending mask value
    friend bool operator<(const Coalition& a, const Coalition& b) { return a.mask < b.mask; }
};

inline bool mask_subset(mask_t a, mask_t b) { return (a & b) == a; }

inline std::string coalition_to_string(mask_t mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 64; ++i) {
        if ((mask >> i) & 1) {
            if (!first) s += ' ';
            s += std::to_string(i + 1);
            first = false;
        }
    }
    s += '}';
    return s;
}

inline std::string coalition_to_string(const Coalition& c) { return coalition_to_string(c.mask); }

}  // namespace ctv
