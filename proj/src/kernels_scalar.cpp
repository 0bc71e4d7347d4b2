#include "kernels_impl.hpp"

namespace moebius::kernels::detail {

SignCounts count_signs_scalar(const std::int8_t* values, std::size_t n)
{
    SignCounts c;
    for (std::size_t t = 0; t < n; ++t) {
        c.plus += values[t] == 1;
        c.minus += values[t] == -1;
    }
    c.zero = n - c.plus - c.minus;
    return c;
}

std::int64_t prefix_sum_scalar(const std::int8_t* values, std::int64_t* out, std::size_t n,
                               std::int64_t carry)
{
    for (std::size_t t = 0; t < n; ++t) {
        carry += values[t];
        out[t] = carry;
    }
    return carry;
}

std::int64_t weighted_floor_sum_scalar(std::uint64_t numerator, const std::uint32_t* divisors,
                                       const std::int8_t* weights, std::size_t n)
{
    std::int64_t acc = 0;
    for (std::size_t t = 0; t < n; ++t)
        acc += weights[t] * static_cast<std::int64_t>(numerator / divisors[t]);
    return acc;
}

} // namespace moebius::kernels::detail
