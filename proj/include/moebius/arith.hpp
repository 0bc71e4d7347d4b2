#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>

#include "moebius/error.hpp"

namespace moebius {

using Int128 = __int128;
using UInt128 = unsigned __int128;

// Largest s with s*s <= n.
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept
{
    if (n < 2)
        return n;
    // Newton iteration from an upper bound; monotonically decreasing.
    // 2^32 exceeds sqrt(n) for every 64-bit n and keeps x + n/x in range.
    std::uint64_t x = n < (std::uint64_t{1} << 32) ? n : std::uint64_t{1} << 32;
    std::uint64_t y = (x + n / x) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

// A nonnegative real argument, floored on construction. Every evaluator works
// on the integer floor; the real value is kept for reporting only.
class FloorArg {
public:
    template <std::integral I>
    constexpr FloorArg(I value) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<I>) {
            if (value < 0)
                throw InvalidArgument("argument must be nonnegative, got " + std::to_string(value));
        }
        floor_ = static_cast<std::uint64_t>(value);
    }

    template <std::floating_point F>
    FloorArg(F value) // NOLINT(google-explicit-constructor)
    {
        if (!std::isfinite(value) || value < 0)
            throw InvalidArgument("argument must be a finite nonnegative real");
        const long double f = std::floor(static_cast<long double>(value));
        if (f >= 18446744073709551616.0L)
            throw InvalidArgument("argument too large for 64-bit floor");
        floor_ = static_cast<std::uint64_t>(f);
    }

    constexpr std::uint64_t floor() const noexcept { return floor_; }
    constexpr std::uint64_t sqrt_floor() const noexcept { return isqrt(floor_); }

private:
    std::uint64_t floor_ = 0;
};

std::string to_string(Int128 value);

} // namespace moebius
