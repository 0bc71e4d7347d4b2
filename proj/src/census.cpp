#include "moebius/census.hpp"

#include <numeric>

#include "moebius/arith.hpp"
#include "moebius/error.hpp"

namespace moebius {

bool census_consistent(const Census& c) noexcept
{
    const Int128 plus = c.n_plus;
    const Int128 minus = c.n_minus;
    const Int128 zero = c.n_zero;
    const Int128 fx = c.floor_x;
    return fx == plus + minus + zero && c.m == plus - minus && Int128{c.q} == plus + minus
        && 2 * plus == fx - zero + c.m && 2 * minus == fx - zero - c.m;
}

void check_census(const Census& c)
{
    const Int128 plus = c.n_plus;
    const Int128 minus = c.n_minus;
    const Int128 zero = c.n_zero;
    const Int128 fx = c.floor_x;
    if (fx != plus + minus + zero)
        throw InternalError("census violates [x] = N+ + N- + N0: " + to_string(c));
    if (c.m != plus - minus)
        throw InternalError("census violates M = N+ - N-: " + to_string(c));
    if (Int128{c.q} != plus + minus)
        throw InternalError("census violates Q = N+ + N-: " + to_string(c));
    if (2 * plus != fx - zero + c.m || 2 * minus != fx - zero - c.m)
        throw InternalError("census violates 2N+- = [x] - N0 +- M: " + to_string(c));
}

Rational Rational::reduced() const
{
    const std::uint64_t g = std::gcd(num, den);
    if (g <= 1)
        return *this;
    return {num / g, den / g};
}

Rational operator+(const Rational& a, const Rational& b)
{
    const Rational x = a.reduced();
    const Rational y = b.reduced();
    const std::uint64_t g = std::gcd(x.den, y.den);
    const UInt128 den = UInt128{x.den / g} * y.den;
    const UInt128 num = UInt128{x.num} * (y.den / g) + UInt128{y.num} * (x.den / g);
    // gcd in 128 bits before narrowing.
    UInt128 a128 = num;
    UInt128 b128 = den;
    while (b128 != 0) {
        const UInt128 r = a128 % b128;
        a128 = b128;
        b128 = r;
    }
    const UInt128 rn = num / a128;
    const UInt128 rd = den / a128;
    if (rn > UINT64_MAX || rd > UINT64_MAX)
        throw InternalError("rational sum overflows 64 bits");
    return {static_cast<std::uint64_t>(rn), static_cast<std::uint64_t>(rd)};
}

std::string to_decimal(const Rational& r, int digits)
{
    if (r.den == 0)
        throw InvalidArgument("rational with zero denominator");
    UInt128 scale = 1;
    for (int d = 0; d < digits; ++d)
        scale *= 10;
    const UInt128 scaled = UInt128{r.num} * scale;
    UInt128 q = scaled / r.den;
    const UInt128 rem = scaled % r.den;
    const UInt128 twice = rem * 2;
    if (twice > r.den || (twice == r.den && (q & 1) != 0))
        ++q;

    const UInt128 whole = q / scale;
    UInt128 frac = q % scale;
    std::string out = to_string(static_cast<Int128>(whole));
    if (digits > 0) {
        std::string tail(static_cast<std::size_t>(digits), '0');
        for (int d = digits - 1; d >= 0; --d) {
            tail[static_cast<std::size_t>(d)] = static_cast<char>('0' + static_cast<int>(frac % 10));
            frac /= 10;
        }
        out += '.';
        out += tail;
    }
    return out;
}

FrequencyReport frequencies(const Census& c)
{
    if (c.floor_x == 0)
        throw InvalidArgument("frequencies need [x] >= 1");
    return {c.floor_x, {c.n_plus, c.floor_x}, {c.n_minus, c.floor_x}, {c.n_zero, c.floor_x}};
}

std::string to_string(const Census& c)
{
    return "{x=" + std::to_string(c.floor_x) + " n_plus=" + std::to_string(c.n_plus)
         + " n_minus=" + std::to_string(c.n_minus) + " n_zero=" + std::to_string(c.n_zero)
         + " q=" + std::to_string(c.q) + " m=" + std::to_string(c.m) + "}";
}

} // namespace moebius
