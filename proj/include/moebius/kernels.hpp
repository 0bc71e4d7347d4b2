#pragma once

// Data-parallel inner loops shared by the sieve and identity evaluators.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 variant. The variant is picked once at runtime from
// CPUID; every variant must return bit-identical results to the scalar one.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace moebius::kernels {

enum class Isa { scalar, avx2 };

struct SignCounts {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    std::uint64_t zero = 0;

    friend bool operator==(const SignCounts&, const SignCounts&) = default;
};

// Numerators at or above this bound are always routed to the scalar kernel:
// the AVX2 floor-division path relies on every intermediate staying below 2^53.
inline constexpr std::uint64_t kSimdNumeratorLimit = std::uint64_t{1} << 40;

struct KernelSet {
    Isa isa;
    std::string_view name;

    // Tally of +1, -1 and 0 entries in values[0..n).
    SignCounts (*count_signs)(const std::int8_t* values, std::size_t n);

    // out[t] = carry + values[0] + ... + values[t]; returns the last running sum
    // (carry when n == 0).
    std::int64_t (*prefix_sum)(const std::int8_t* values, std::int64_t* out, std::size_t n,
                               std::int64_t carry);

    // Sum over t of weights[t] * floor(numerator / divisors[t]).
    // divisors must be in [1, 2^31); weights in {-1, 0, +1}.
    std::int64_t (*weighted_floor_sum)(std::uint64_t numerator, const std::uint32_t* divisors,
                                       const std::int8_t* weights, std::size_t n);
};

const KernelSet& scalar_kernels() noexcept;

// nullptr when the ISA was not compiled in or the running CPU lacks it.
const KernelSet* kernels_for(Isa isa) noexcept;

// Best set for this CPU. MOEBIUS_KERNEL=scalar forces the reference path.
const KernelSet& active() noexcept;

inline SignCounts count_signs(std::span<const std::int8_t> values)
{
    return active().count_signs(values.data(), values.size());
}

inline std::int64_t prefix_sum(std::span<const std::int8_t> values, std::span<std::int64_t> out,
                               std::int64_t carry = 0)
{
    return active().prefix_sum(values.data(), out.data(), values.size(), carry);
}

inline std::int64_t weighted_floor_sum(std::uint64_t numerator,
                                       std::span<const std::uint32_t> divisors,
                                       std::span<const std::int8_t> weights)
{
    const KernelSet& k = numerator < kSimdNumeratorLimit ? active() : scalar_kernels();
    return k.weighted_floor_sum(numerator, divisors.data(), weights.data(), divisors.size());
}

} // namespace moebius::kernels
