#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "moebius/arith.hpp"

namespace moebius {

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 30;

struct SieveOptions {
    std::size_t memory_budget = kDefaultMemoryBudget;
};

// Budget from MOEBIUS_MEM_BYTES when set to a positive integer, else the default.
// Throws InvalidArgument when the variable is set but unparsable.
std::size_t memory_budget_from_env();

// Bytes build_table would allocate for the given limit.
std::size_t table_bytes(std::uint64_t limit) noexcept;

// Möbius values and Mertens prefix sums for 1..limit. Immutable once built.
class MoebiusTable {
public:
    std::uint64_t limit() const noexcept { return limit_; }

    // Index 0 is a zero sentinel; valid indices are 1..limit.
    std::span<const std::int8_t> mu_values() const noexcept { return mu_; }
    std::span<const std::int64_t> mertens_prefix() const noexcept { return prefix_; }

    std::int8_t mu(std::uint64_t k) const;
    std::int64_t mertens(FloorArg x) const;

    // Unchecked; callers guarantee 1 <= k <= limit (0 yields 0).
    std::int8_t mu_unchecked(std::uint64_t k) const noexcept { return mu_[k]; }
    std::int64_t mertens_unchecked(std::uint64_t n) const noexcept { return prefix_[n]; }

    friend bool operator==(const MoebiusTable&, const MoebiusTable&) = default;

private:
    friend MoebiusTable build_table(std::uint64_t limit, const SieveOptions& options);

    std::uint64_t limit_ = 0;
    std::vector<std::int8_t> mu_;
    std::vector<std::int64_t> prefix_;
};

// Linear (smallest-prime-factor) sieve over 1..limit.
// Throws InvalidArgument for limit == 0, ResourceError when the table would
// exceed options.memory_budget.
MoebiusTable build_table(std::uint64_t limit, const SieveOptions& options = {});

// Throws InvalidArgument unless table covers index `needed`.
void require_limit(const MoebiusTable& table, std::uint64_t needed);

} // namespace moebius
