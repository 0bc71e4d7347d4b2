#include "moebius/delta.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <string>

#include "moebius/error.hpp"

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

Int128 halve_exact(Int128 value, const char* what, std::uint64_t n)
{
    if (value % 2 != 0)
        throw InternalError(std::string(what) + " is odd (" + to_string(value) + ") at x=" + std::to_string(n));
    return value / 2;
}

// Regrouped Mertens delta sum: sum over squarefree j <= i of
// mu_i (2 mu_j, or mu_i on the diagonal) times the hits of i*j in i^2..n.
Int128 mertens_delta_sum(const SquarefreeIndex& sf, std::uint64_t n)
{
    Int128 total = 0;
    for (std::size_t a = 0; a < sf.index.size(); ++a) {
        const std::uint64_t i = sf.index[a];
        const std::uint64_t from = i * i;
        for (std::size_t b = 0; b < a; ++b) {
            const std::int64_t coef = 2 * sf.mu[a] * sf.mu[b];
            total += coef * static_cast<Int128>(kronecker_hits(from, n, i * sf.index[b]));
        }
        // mu_i (-mu_i + 2 mu_i) = 1 for squarefree i
        total += static_cast<Int128>(kronecker_hits(from, n, i * i));
    }
    return total;
}

Int128 square_delta_sum(const MoebiusTable& table, std::uint64_t n, std::uint64_t first)
{
    const std::uint64_t s = isqrt(n);
    require_limit(table, s);
    Int128 total = 0;
    for (std::uint64_t i = first; i <= s; ++i) {
        if (const std::int8_t m = table.mu_unchecked(i); m != 0)
            total += m * static_cast<Int128>(kronecker_hits(i * i, n, i * i));
    }
    return total;
}

} // namespace

std::uint64_t kronecker_hits(std::uint64_t lo, std::uint64_t hi, std::uint64_t d)
{
    if (d == 0)
        throw InvalidArgument("delta divisor must be positive");
    if (lo < 1)
        lo = 1;
    if (lo > hi)
        return 0;
    std::uint64_t hits = 0;
    // first multiple of d at or above lo
    for (std::uint64_t k = (lo + d - 1) / d * d; k <= hi; k += d) {
        ++hits;
        if (hi - k < d)
            break;
    }
    return hits;
}

std::uint64_t delta_floor(FloorArg x, std::uint64_t d)
{
    if (d == 0)
        throw InvalidArgument("delta_floor divisor must be positive");
    return kronecker_hits(1, x.floor(), d);
}

std::int64_t mertens_delta(const MoebiusTable& table, FloorArg x)
{
    const std::uint64_t n = require_x_at_least_one(x, "mertens_delta");
    const SquarefreeIndex sf = squarefree_index(table, x.sqrt_floor());
    return static_cast<std::int64_t>(2 - mertens_delta_sum(sf, n));
}

std::int8_t mu_delta(const MoebiusTable& table, std::uint64_t x)
{
    if (x < 2)
        throw InvalidArgument("mu_delta is defined for x >= 2, got " + std::to_string(x));
    const std::uint64_t s = isqrt(x);
    const SquarefreeIndex sf = squarefree_index(table, s);
    std::int64_t total = 0;
    for (std::size_t a = 0; a < sf.index.size(); ++a) {
        if (x % sf.index[a] != 0)
            continue;
        const std::uint64_t rest = x / sf.index[a];
        for (std::size_t b = 0; b < sf.index.size(); ++b) {
            if (rest % sf.index[b] == 0)
                total += sf.mu[a] * sf.mu[b];
        }
    }
    if (total < -1 || total > 1)
        throw InternalError("mu_delta sum " + std::to_string(total) + " outside {-1,0,1} at x=" + std::to_string(x));
    return static_cast<std::int8_t>(-total);
}

std::uint64_t n_zero_delta(const MoebiusTable& table, FloorArg x)
{
    return to_count(-square_delta_sum(table, x.floor(), 2), "delta N0");
}

std::uint64_t q_delta(const MoebiusTable& table, FloorArg x)
{
    return to_count(square_delta_sum(table, x.floor(), 1), "delta Q");
}

Census census_delta(const MoebiusTable& table, FloorArg x)
{
    const std::uint64_t n = require_x_at_least_one(x, "census_delta");
    const SquarefreeIndex sf = squarefree_index(table, x.sqrt_floor());
    const Int128 p = mertens_delta_sum(sf, n);
    const Int128 sq = square_delta_sum(table, n, 1);

    Census c;
    c.floor_x = n;
    c.m = static_cast<std::int64_t>(2 - p);
    c.n_plus = to_count(1 + halve_exact(sq - p, "S - P", n), "delta N+");
    c.n_minus = to_count(-1 + halve_exact(sq + p, "S + P", n), "delta N-");
    c.n_zero = n_zero_delta(table, x);
    c.q = to_count(sq, "delta Q");
    check_census(c);
    return c;
}

std::string_view name(TraceTarget target) noexcept
{
    switch (target) {
    case TraceTarget::mertens:
        return "mertens";
    case TraceTarget::n_zero:
        return "n_zero";
    case TraceTarget::q:
        return "q";
    case TraceTarget::n_plus:
        return "n_plus";
    case TraceTarget::n_minus:
        return "n_minus";
    }
    return "?";
}

std::optional<TraceTarget> parse_trace_target(std::string_view text) noexcept
{
    for (const auto t : {TraceTarget::mertens, TraceTarget::n_zero, TraceTarget::q, TraceTarget::n_plus,
                         TraceTarget::n_minus}) {
        if (name(t) == text)
            return t;
    }
    return std::nullopt;
}

TraceForm trace_form(TraceTarget target) noexcept
{
    switch (target) {
    case TraceTarget::mertens:
        return {2, 1};
    case TraceTarget::n_zero:
    case TraceTarget::q:
        return {0, 1};
    case TraceTarget::n_plus:
        return {1, 2};
    case TraceTarget::n_minus:
        return {-1, 2};
    }
    return {};
}

TraceStream::TraceStream(const MoebiusTable& table, FloorArg x, TraceTarget target)
    : n_(require_x_at_least_one(x, "trace")), target_(target),
      sf_(squarefree_index(table, x.sqrt_floor()))
{
    k_ = 1;
}

bool TraceStream::has_single(std::size_t pos) const noexcept
{
    switch (target_) {
    case TraceTarget::mertens:
        return false;
    case TraceTarget::n_zero:
        return sf_.index[pos] >= 2;
    default:
        return true;
    }
}

bool TraceStream::has_pairs() const noexcept
{
    return target_ == TraceTarget::mertens || target_ == TraceTarget::n_plus || target_ == TraceTarget::n_minus;
}

std::int64_t TraceStream::pair_weight(std::size_t pos_i, std::size_t pos_j) const noexcept
{
    const std::int64_t coef = pos_j < pos_i ? 2 * sf_.mu[pos_i] * sf_.mu[pos_j] : 1;
    return target_ == TraceTarget::n_minus ? coef : -coef;
}

std::optional<DeltaTraceEvent> TraceStream::next()
{
    while (pos_i_ < sf_.index.size()) {
        const std::uint64_t i = sf_.index[pos_i_];
        const bool single = has_single(pos_i_);
        if (k_ > n_ || (!single && !has_pairs())) {
            ++pos_i_;
            if (pos_i_ < sf_.index.size())
                k_ = std::uint64_t{sf_.index[pos_i_]} * sf_.index[pos_i_];
            slot_ = 0;
            continue;
        }
        if (slot_ == 0) {
            slot_ = 1;
            if (single) {
                const std::int64_t m = sf_.mu[pos_i_];
                return DeltaTraceEvent{k_, i, std::nullopt, target_ == TraceTarget::n_zero ? -m : m,
                                       k_ % (i * i) == 0};
            }
        }
        if (has_pairs() && slot_ <= pos_i_ + 1) {
            const std::size_t pos_j = slot_ - 1;
            ++slot_;
            const std::uint64_t j = sf_.index[pos_j];
            return DeltaTraceEvent{k_, i, j, pair_weight(pos_i_, pos_j), k_ % (i * j) == 0};
        }
        ++k_;
        slot_ = 0;
    }
    return std::nullopt;
}

std::int64_t fold(TraceStream& stream)
{
    Int128 sum = 0;
    while (const auto event = stream.next()) {
        if (event->hit)
            sum += event->weight;
    }
    const TraceForm form = trace_form(stream.target());
    if (sum % form.divisor != 0)
        throw InternalError("trace sum " + to_string(sum) + " not divisible by " + std::to_string(form.divisor));
    return static_cast<std::int64_t>(form.constant + sum / form.divisor);
}

std::int64_t write_trace(std::ostream& out, TraceStream& stream)
{
    out << "# target=" << name(stream.target()) << " x=" << stream.floor_x() << '\n';

    std::string buffer;
    buffer.reserve(1 << 16);
    std::array<char, 24> num{};
    auto append = [&](auto value) {
        const auto [end, ec] = std::to_chars(num.data(), num.data() + num.size(), value);
        buffer.append(num.data(), end);
    };

    Int128 sum = 0;
    while (const auto event = stream.next()) {
        append(event->k);
        buffer += '\t';
        append(event->i);
        buffer += '\t';
        if (event->j)
            append(*event->j);
        buffer += '\t';
        append(event->weight);
        buffer += '\t';
        buffer += event->hit ? '1' : '0';
        buffer += '\n';
        if (event->hit)
            sum += event->weight;
        if (buffer.size() > (1 << 16) - 128) {
            out << buffer;
            buffer.clear();
        }
    }
    out << buffer;

    const TraceForm form = trace_form(stream.target());
    if (sum % form.divisor != 0)
        throw InternalError("trace sum " + to_string(sum) + " not divisible by " + std::to_string(form.divisor));
    const auto total = static_cast<std::int64_t>(form.constant + sum / form.divisor);
    out << "# total=" << total << '\n';
    return total;
}

} // namespace moebius
