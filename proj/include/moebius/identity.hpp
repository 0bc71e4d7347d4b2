#pragma once

// Square-root identities: every quantity at x is evaluated from Möbius data
// on 1..isqrt(floor(x)) only.

#include <cstdint>
#include <span>
#include <vector>

#include "moebius/arith.hpp"
#include "moebius/census.hpp"
#include "moebius/sieve.hpp"

namespace moebius {

// Squarefree indices 1..bound with their Möbius values (the only indices that
// contribute to any of the sums below).
struct SquarefreeIndex {
    std::vector<std::uint32_t> index;
    std::vector<std::int8_t> mu;
};

SquarefreeIndex squarefree_index(const MoebiusTable& table, std::uint64_t bound);

// D(x) = sum over i, j in 1..isqrt(x) of mu_i mu_j floor(x / (i j)).
Int128 mertens_double_sum(const MoebiusTable& table, FloorArg x);

// S(x) = sum over i in `first`..isqrt(x) of mu_i floor(x / i^2).
Int128 square_sum(const MoebiusTable& table, FloorArg x, std::uint64_t first = 1);

// M(x) = 2 M(isqrt x) - D(x). Requires x >= 1.
std::int64_t mertens_identity(const MoebiusTable& table, FloorArg x);

// N0(x) by inclusion-exclusion over products of distinct prime squares.
// `primes` must be ascending and contain every prime <= isqrt(x); larger
// entries are ignored. A missing or composite entry raises IncorrectInput.
std::uint64_t n_zero_inclusion_exclusion(FloorArg x, std::span<const std::uint64_t> primes);

// N0(x) = -sum_{i=2}^{isqrt x} mu_i floor(x / i^2).
std::uint64_t n_zero_moebius_sum(const MoebiusTable& table, FloorArg x);

// Q(x) = sum_{i=1}^{isqrt x} mu_i floor(x / i^2).
std::uint64_t q_squarefree(const MoebiusTable& table, FloorArg x);

// Full census from the shared subexpressions D(x), S(x) and M(isqrt x).
// Requires x >= 1. Throws InternalError if a half-sum is odd.
Census census(const MoebiusTable& table, FloorArg x);

// Census read straight off a table covering x (the sieve path).
Census census_from_table(const MoebiusTable& table, FloorArg x);

} // namespace moebius
