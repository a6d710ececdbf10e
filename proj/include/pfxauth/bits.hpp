#pragma once

#include <bit>
#include <cstdint>
#include <set>

namespace pfxauth {

/// Exponents of the binary representation of n.
inline std::set<unsigned> bits(std::uint64_t n) {
    std::set<unsigned> out;
    for (unsigned k = 0; n != 0; ++k, n >>= 1)
        if (n & 1)
            out.insert(k);
    return out;
}

constexpr unsigned popcount(std::uint64_t n) noexcept { return static_cast<unsigned>(std::popcount(n)); }

/// floor(log2 n) for n >= 1
constexpr unsigned floor_log2(std::uint64_t n) noexcept { return static_cast<unsigned>(std::bit_width(n) - 1); }

/// ceil(log2 n) for n >= 1
constexpr unsigned ceil_log2(std::uint64_t n) noexcept {
    return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

constexpr std::uint64_t pow3(unsigned k) noexcept {
    std::uint64_t r = 1;
    while (k-- > 0)
        r *= 3;
    return r;
}

/// floor(log3 n) for n >= 1
constexpr unsigned floor_log3(std::uint64_t n) noexcept {
    unsigned t = 0;
    while (pow3(t + 1) <= n)
        ++t;
    return t;
}

} // namespace pfxauth
