#pragma once

// Brute-force ground truth. Nothing here touches the sieve: Möbius values come
// from trial division and every count from a direct scan.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "moebius/arith.hpp"
#include "moebius/census.hpp"
#include "moebius/sieve.hpp"

namespace moebius::oracle {

inline constexpr std::uint64_t kBruteForceCap = 1'000'000;

// Trial division up to sqrt(k), bailing out on the first squared prime.
std::int8_t mu_bruteforce(std::uint64_t k);

// Primes <= bound by trial division.
std::vector<std::uint64_t> primes_bruteforce(std::uint64_t bound);

// Classifies every k <= x. Throws ResourceError above `cap`.
Census census_bruteforce(FloorArg x, std::uint64_t cap = kBruteForceCap);

enum class CheckFamily : std::uint8_t {
    eq1_mertens_identity,
    eq4_n_zero_inclusion_exclusion,
    eq5_n_zero_moebius_sum,
    eq6_q_squarefree,
    eq6_census,
    eq8_delta_floor,
    eq10_mertens_delta,
    eq11_mu_delta,
    eq12_n_zero_delta,
    eq13_q_delta,
    eq14_n_plus_delta,
    eq15_n_minus_delta,
};

inline constexpr std::size_t kCheckFamilyCount = 12;

std::string_view name(CheckFamily family) noexcept;
const std::array<CheckFamily, kCheckFamilyCount>& all_families() noexcept;

struct Check {
    CheckFamily family{};
    std::uint64_t x = 0;
    std::vector<std::int64_t> expected;
    std::vector<std::int64_t> actual;
    bool passed = false;
    std::string error; // set when the evaluator threw
};

struct VerifyReport {
    std::uint64_t x_first = 1;
    std::uint64_t x_last = 0;
    std::vector<Check> checks; // sorted by (x, family)
    bool all_passed = true;

    std::size_t failure_count() const noexcept;
};

struct VerifyOptions {
    unsigned threads = 1;
    bool fail_fast = false;
    std::uint64_t cap = kBruteForceCap;
};

// Runs every check family at every integer x in 1..x_max against brute force.
// Requires table.limit() >= isqrt(x_max) and x_max <= options.cap.
VerifyReport verify_all(const MoebiusTable& table, std::uint64_t x_max, const VerifyOptions& options = {});

// {"x_range":[first,last],"checks":N,"families":[...],"failures":[...],"all_passed":b}
std::string to_json(const VerifyReport& report, int indent = 2);

} // namespace moebius::oracle
