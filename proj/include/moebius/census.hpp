#pragma once

#include <cstdint>
#include <string>

namespace moebius {

// Counts of k <= x by Möbius value, plus the squarefree count and Mertens value.
struct Census {
    std::uint64_t floor_x = 0;
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
    std::uint64_t n_zero = 0;
    std::uint64_t q = 0;
    std::int64_t m = 0;

    friend bool operator==(const Census&, const Census&) = default;
};

// True when all four counting relations hold:
//   floor_x = n_plus + n_minus + n_zero,  m = n_plus - n_minus,
//   q = n_plus + n_minus,  2 n_plus = floor_x - n_zero + m.
bool census_consistent(const Census& c) noexcept;

// Throws InternalError naming the first violated relation.
void check_census(const Census& c);

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Rational reduced() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

// Exact sum; denominators are combined through their lcm.
Rational operator+(const Rational& a, const Rational& b);

// Fixed-point rendering with `digits` fractional digits, rounded half to even.
std::string to_decimal(const Rational& r, int digits = 10);

struct FrequencyReport {
    std::uint64_t floor_x = 0;
    Rational plus;
    Rational minus;
    Rational zero;
};

// Throws InvalidArgument when c.floor_x == 0.
FrequencyReport frequencies(const Census& c);

std::string to_string(const Census& c);

} // namespace moebius
