#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vecshap {

/// A coalition is a subset of the player index set {0, ..., n-1},
/// stored as a bit mask (bit i set <=> player i is a member).
struct Coalition {
    static constexpr int kMaxPlayers = 24;

    std::uint32_t mask = 0;
    int n = 0;

    Coalition(std::uint32_t mask_, int n_) : mask(mask_), n(n_) {
        if (n < 1 || n > kMaxPlayers)
            throw std::invalid_argument("player count out of range [1, 24]: " + std::to_string(n));
        if (n < 32 && mask >= (std::uint32_t{1} << n))
            throw std::invalid_argument("coalition mask out of range for n=" + std::to_string(n));
    }

    static Coalition empty(int n) { return Coalition(0, n); }
    static Coalition full(int n) { return Coalition((std::uint32_t{1} << n) - 1, n); }

    int size() const { return std::popcount(mask); }
    bool is_empty() const { return mask == 0; }
    bool contains(int i) const { return (mask >> i) & 1u; }
    bool subset_of(std::uint32_t other) const { return (mask & other) == mask; }

    Coalition with(int i) const { return Coalition(mask | (std::uint32_t{1} << i), n); }
    Coalition without(int i) const { return Coalition(mask & ~(std::uint32_t{1} << i), n); }

    friend bool operator==(const Coalition&, const Coalition&) = default;
};

inline int mask_size(std::uint32_t mask) { return std::popcount(mask); }
inline std::uint32_t full_mask_for(int n) { return (std::uint32_t{1} << n) - 1; }

}  // namespace vecshap
