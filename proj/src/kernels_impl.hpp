#pragma once

// Internal kernel entry points. Kept free of standard-library templates so the
// AVX2 translation unit, built with -mavx2, emits no inline functions that
// could be merged with baseline copies at link time.

#include <cstddef>
#include <cstdint>

#include "moebius/kernels.hpp"

namespace moebius::kernels::detail {

SignCounts count_signs_scalar(const std::int8_t* values, std::size_t n);
std::int64_t prefix_sum_scalar(const std::int8_t* values, std::int64_t* out, std::size_t n,
                               std::int64_t carry);
std::int64_t weighted_floor_sum_scalar(std::uint64_t numerator, const std::uint32_t* divisors,
                                       const std::int8_t* weights, std::size_t n);

#if defined(MOEBIUS_HAVE_AVX2)
SignCounts count_signs_avx2(const std::int8_t* values, std::size_t n);
std::int64_t prefix_sum_avx2(const std::int8_t* values, std::int64_t* out, std::size_t n,
                             std::int64_t carry);
std::int64_t weighted_floor_sum_avx2(std::uint64_t numerator, const std::uint32_t* divisors,
                                     const std::int8_t* weights, std::size_t n);
#endif

} // namespace moebius::kernels::detail
