#include "moebius/identity.hpp"

#include <string>

#include "moebius/error.hpp"
#include "moebius/kernels.hpp"

namespace moebius {

namespace {

std::uint64_t require_x_at_least_one(FloorArg x, const char* what)
{
    if (x.floor() < 1)
        throw InvalidArgument(std::string(what) + " requires x >= 1");
    return x.floor();
}

std::uint64_t to_count(Int128 value, const char* what)
{
    if (value < 0)
        throw InternalError(std::string(what) + " evaluated to negative " + to_string(value));
    return static_cast<std::uint64_t>(value);
}

// Depth-first walk over products of distinct prime squares, pruned at n.
Int128 inclusion_exclusion(std::uint64_t n, std::span<const std::uint64_t> squares, std::size_t start,
                           std::uint64_t product, int sign)
{
    Int128 total = 0;
    for (std::size_t t = start; t < squares.size(); ++t) {
        if (squares[t] > n / product)
            break;
        const std::uint64_t next = product * squares[t];
        total += sign * static_cast<Int128>(n / next);
        total += inclusion_exclusion(n, squares, t + 1, next, -sign);
    }
    return total;
}

// Confirms primes[0..] lists exactly the primes up to bound, in order.
void check_prime_list(std::span<const std::uint64_t> primes, std::uint64_t bound)
{
    std::size_t at = 0;
    for (std::uint64_t c = 2; c <= bound; ++c) {
        if (at < primes.size() && primes[at] < c)
            throw IncorrectInput("prime list is not strictly ascending at " + std::to_string(primes[at]));
        // Every prime below c has already been matched, so listed primes suffice.
        bool is_prime = true;
        for (std::size_t t = 0; t < at && primes[t] * primes[t] <= c; ++t) {
            if (c % primes[t] == 0) {
                is_prime = false;
                break;
            }
        }
        const bool listed = at < primes.size() && primes[at] == c;
        if (is_prime && !listed)
            throw IncorrectInput("prime list is missing " + std::to_string(c));
        if (!is_prime && listed)
            throw IncorrectInput("prime list contains composite " + std::to_string(c));
        if (listed)
            ++at;
    }
}

} // namespace

SquarefreeIndex squarefree_index(const MoebiusTable& table, std::uint64_t bound)
{
    require_limit(table, bound);
    SquarefreeIndex out;
    for (std::uint64_t i = 1; i <= bound; ++i) {
        const std::int8_t m = table.mu_unchecked(i);
        if (m != 0) {
            out.index.push_back(static_cast<std::uint32_t>(i));
            out.mu.push_back(m);
        }
    }
    return out;
}

Int128 mertens_double_sum(const MoebiusTable& table, FloorArg x)
{
    const std::uint64_t n = x.floor();
    const SquarefreeIndex sf = squarefree_index(table, x.sqrt_floor());
    const std::span<const std::uint32_t> idx(sf.index);
    const std::span<const std::int8_t> mu(sf.mu);

    // Symmetric in (i, j): diagonal once, strict lower triangle twice.
    Int128 total = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const std::uint64_t row_n = n / idx[a];
        const std::int64_t lower = kernels::weighted_floor_sum(row_n, idx.first(a), mu.first(a));
        total += Int128{mu[a]} * (2 * Int128{lower}) + static_cast<Int128>(row_n / idx[a]);
    }
    return total;
}

Int128 square_sum(const MoebiusTable& table, FloorArg x, std::uint64_t first)
{
    const std::uint64_t n = x.floor();
    const std::uint64_t s = x.sqrt_floor();
    require_limit(table, s);
    Int128 total = 0;
    for (std::uint64_t i = first; i <= s; ++i) {
        if (const std::int8_t m = table.mu_unchecked(i); m != 0)
            total += m * static_cast<Int128>(n / (i * i));
    }
    return total;
}

std::int64_t mertens_identity(const MoebiusTable& table, FloorArg x)
{
    require_x_at_least_one(x, "mertens_identity");
    require_limit(table, x.sqrt_floor());
    const Int128 m = 2 * Int128{table.mertens_unchecked(x.sqrt_floor())} - mertens_double_sum(table, x);
    return static_cast<std::int64_t>(m);
}

std::uint64_t n_zero_inclusion_exclusion(FloorArg x, std::span<const std::uint64_t> primes)
{
    const std::uint64_t n = x.floor();
    const std::uint64_t s = x.sqrt_floor();
    check_prime_list(primes, s);

    std::vector<std::uint64_t> squares;
    for (const std::uint64_t p : primes) {
        if (p > s)
            break;
        squares.push_back(p * p);
    }
    if (n == 0)
        return 0;
    return to_count(inclusion_exclusion(n, squares, 0, 1, +1), "inclusion-exclusion N0");
}

std::uint64_t n_zero_moebius_sum(const MoebiusTable& table, FloorArg x)
{
    return to_count(-square_sum(table, x, 2), "N0");
}

std::uint64_t q_squarefree(const MoebiusTable& table, FloorArg x)
{
    return to_count(square_sum(table, x, 1), "Q");
}

Census census(const MoebiusTable& table, FloorArg x)
{
    const std::uint64_t n = require_x_at_least_one(x, "census");
    const std::uint64_t s = x.sqrt_floor();
    require_limit(table, s);

    const Int128 d = mertens_double_sum(table, x);
    const Int128 sq = square_sum(table, x, 1);
    const Int128 m_root = table.mertens_unchecked(s);

    // S - D and S + D share parity; both halves must be exact.
    const Int128 half_minus = sq - d;
    if (half_minus % 2 != 0)
        throw InternalError("odd S - D (" + to_string(half_minus) + ") at x=" + std::to_string(n));

    Census c;
    c.floor_x = n;
    c.m = static_cast<std::int64_t>(2 * m_root - d);
    c.n_plus = to_count(m_root + (sq - d) / 2, "N+");
    c.n_minus = to_count(-m_root + (d + sq) / 2, "N-");
    c.n_zero = n_zero_moebius_sum(table, x);
    c.q = to_count(sq, "Q");
    check_census(c);
    return c;
}

Census census_from_table(const MoebiusTable& table, FloorArg x)
{
    const std::uint64_t n = require_x_at_least_one(x, "census_from_table");
    require_limit(table, n);
    const auto counts = kernels::count_signs(table.mu_values().subspan(1, n));
    Census c;
    c.floor_x = n;
    c.n_plus = counts.plus;
    c.n_minus = counts.minus;
    c.n_zero = counts.zero;
    c.q = counts.plus + counts.minus;
    c.m = table.mertens_unchecked(n);
    check_census(c);
    return c;
}

} // namespace moebius
