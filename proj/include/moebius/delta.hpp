#pragma once

// Kronecker-delta forms. Every floor [x/d] is replaced by an explicit count of
// the k <= x with d | k, enumerated by striding over multiples of d. The
// evaluators are exact integer twins of the square-root identities and the
// trace stream exposes each individual term.

#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <optional>
#include <string_view>

#include "moebius/arith.hpp"
#include "moebius/census.hpp"
#include "moebius/identity.hpp"
#include "moebius/sieve.hpp"

namespace moebius {

// Number of k in lo..hi with d | k (sum of delta(k/d)), by strided enumeration.
std::uint64_t kronecker_hits(std::uint64_t lo, std::uint64_t hi, std::uint64_t d);

// [x/d] as sum_{k=1}^{x} delta(k/d). Throws InvalidArgument for d == 0.
std::uint64_t delta_floor(FloorArg x, std::uint64_t d);

// M(x) = 2 - sum_i sum_{k=i^2}^{x} mu_i (-mu_i delta(k/i^2) + sum_{j<=i} 2 mu_j delta(k/(i j))).
std::int64_t mertens_delta(const MoebiusTable& table, FloorArg x);

// mu_x = -sum_{i,j<=isqrt x} mu_i mu_j delta(x/(i j)), valid for x >= 2 only.
std::int8_t mu_delta(const MoebiusTable& table, std::uint64_t x);

// N0(x) = -sum_{i=2}^{isqrt x} sum_{k=i^2}^{x} mu_i delta(k/i^2).
std::uint64_t n_zero_delta(const MoebiusTable& table, FloorArg x);

// Q(x) = sum_{i=1}^{isqrt x} sum_{k=i^2}^{x} mu_i delta(k/i^2).
std::uint64_t q_delta(const MoebiusTable& table, FloorArg x);

// N+ = 1 - P/2 + S/2 and N- = -1 + P/2 + S/2, with P the Mertens delta double
// sum and S the Q sum. Requires x >= 1; throws InternalError on odd halves.
Census census_delta(const MoebiusTable& table, FloorArg x);

enum class TraceTarget { mertens, n_zero, q, n_plus, n_minus };

std::string_view name(TraceTarget target) noexcept;
std::optional<TraceTarget> parse_trace_target(std::string_view text) noexcept;

// One term of a delta form. `weight` carries the outer sign of the form, so a
// trace folds as  constant + (sum of weight over hit events) / divisor.
struct DeltaTraceEvent {
    std::uint64_t k = 0;
    std::uint64_t i = 0;
    std::optional<std::uint64_t> j; // absent for single-index terms
    std::int64_t weight = 0;
    bool hit = false;

    friend bool operator==(const DeltaTraceEvent&, const DeltaTraceEvent&) = default;
};

struct TraceForm {
    std::int64_t constant = 0;
    std::int64_t divisor = 1;
};

TraceForm trace_form(TraceTarget target) noexcept;

// Lazy event generator. Order: i ascending; k ascending from i^2 to x within
// i; within k the single-index term (if any) first, then j ascending.
// Copies the Möbius values it needs, so the table may be released afterwards.
class TraceStream {
public:
    TraceStream(const MoebiusTable& table, FloorArg x, TraceTarget target);

    TraceTarget target() const noexcept { return target_; }
    std::uint64_t floor_x() const noexcept { return n_; }

    std::optional<DeltaTraceEvent> next();

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = DeltaTraceEvent;
        using difference_type = std::ptrdiff_t;
        using pointer = const DeltaTraceEvent*;
        using reference = const DeltaTraceEvent&;

        iterator() = default;
        explicit iterator(TraceStream* stream) : stream_(stream) { ++*this; }

        reference operator*() const { return *current_; }
        pointer operator->() const { return &*current_; }
        iterator& operator++()
        {
            current_ = stream_->next();
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& it, std::default_sentinel_t) { return !it.current_; }

    private:
        TraceStream* stream_ = nullptr;
        std::optional<DeltaTraceEvent> current_;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() const noexcept { return {}; }

private:
    bool has_single(std::size_t pos) const noexcept;
    bool has_pairs() const noexcept;
    std::int64_t pair_weight(std::size_t pos_i, std::size_t pos_j) const noexcept;

    std::uint64_t n_;
    TraceTarget target_;
    SquarefreeIndex sf_;
    std::size_t pos_i_ = 0;
    std::uint64_t k_ = 0;
    std::size_t slot_ = 0; // 0 = single-index term, 1 + t = pair with j = sf_.index[t]
};

// Consumes the stream and folds it into the scalar value of its form.
// Throws InternalError if the hit-weight sum is not divisible by the form's divisor.
std::int64_t fold(TraceStream& stream);

// Tab-separated serialization: header `# target=<name> x=<n>`, one line per
// event `k<TAB>i<TAB>j<TAB>weight<TAB>hit`, closing `# total=<fold>`.
// Returns the folded total.
std::int64_t write_trace(std::ostream& out, TraceStream& stream);

} // namespace moebius
