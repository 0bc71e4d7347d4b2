#include <doctest.h>

#include <sstream>
#include <vector>

#include "moebius/delta.hpp"
#include "moebius/error.hpp"
#include "moebius/identity.hpp"
#include "moebius/oracle.hpp"

using namespace moebius;

namespace {

// First line of the Mertens delta form, k-major and unregrouped:
// 2 - sum_{k=1}^{x} sum_{i,j <= isqrt k} mu_i mu_j [i j | k].
std::int64_t mertens_delta_naive(const MoebiusTable& t, std::uint64_t n)
{
    std::int64_t sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const std::uint64_t s = isqrt(k);
        for (std::uint64_t i = 1; i <= s; ++i)
            for (std::uint64_t j = 1; j <= s; ++j)
                if (k % (i * j) == 0)
                    sum += t.mu(i) * t.mu(j);
    }
    return 2 - sum;
}

std::int64_t scalar_for(const MoebiusTable& t, std::uint64_t x, TraceTarget target)
{
    switch (target) {
    case TraceTarget::mertens:
        return mertens_delta(t, x);
    case TraceTarget::n_zero:
        return static_cast<std::int64_t>(n_zero_delta(t, x));
    case TraceTarget::q:
        return static_cast<std::int64_t>(q_delta(t, x));
    case TraceTarget::n_plus:
        return static_cast<std::int64_t>(census_delta(t, x).n_plus);
    case TraceTarget::n_minus:
        return static_cast<std::int64_t>(census_delta(t, x).n_minus);
    }
    return 0;
}

constexpr TraceTarget kTargets[] = {TraceTarget::mertens, TraceTarget::n_zero, TraceTarget::q, TraceTarget::n_plus,
                                    TraceTarget::n_minus};

} // namespace

TEST_CASE("delta_floor")
{
    CHECK(delta_floor(7, 1) == 7);
    CHECK(delta_floor(16, 6) == 2);
    CHECK(delta_floor(1000, 37) == 27);
    CHECK(delta_floor(16.9, 6) == 2);
    CHECK_THROWS_AS(delta_floor(10, 0), InvalidArgument);

    for (std::uint64_t x = 1; x <= 1000; ++x)
        for (std::uint64_t d = 1; d <= 100; ++d)
            REQUIRE(delta_floor(x, d) == x / d);
}

TEST_CASE("kronecker_hits counts multiples in a window")
{
    CHECK(kronecker_hits(9, 16, 3) == 3);
    CHECK(kronecker_hits(9, 8, 3) == 0);
    CHECK(kronecker_hits(0, 10, 5) == 2);
    CHECK(kronecker_hits(1, ~std::uint64_t{0}, ~std::uint64_t{0}) == 1);
}

TEST_CASE("mertens_delta")
{
    const auto t = build_table(1000);
    CHECK(mertens_delta(t, 1) == 1);
    CHECK(mertens_delta(t, 16) == -1);
    CHECK(mertens_delta(t, 1000) == 2);
    CHECK(mertens_delta(t, 1'000'000) == 212);
    CHECK_THROWS_AS(mertens_delta(build_table(3), 16), InvalidArgument);
    CHECK_THROWS_AS(mertens_delta(t, 0), InvalidArgument);

    for (std::uint64_t x = 1; x <= 1000; ++x)
        REQUIRE(mertens_delta(t, x) == mertens_identity(t, x));
}

TEST_CASE("k-major and regrouped Mertens delta forms agree")
{
    const auto t = build_table(100);
    for (std::uint64_t x = 1; x <= 500; ++x)
        REQUIRE(mertens_delta_naive(t, x) == mertens_delta(t, x));
}

TEST_CASE("mu_delta reproduces the sieve")
{
    const auto t = build_table(10'000);
    CHECK(mu_delta(t, 2) == -1);
    CHECK(mu_delta(t, 4) == 0);
    CHECK_THROWS_AS(mu_delta(t, 1), InvalidArgument);
    CHECK_THROWS_AS(mu_delta(t, 0), InvalidArgument);
    for (std::uint64_t k = 2; k <= 10'000; ++k)
        REQUIRE(mu_delta(t, k) == t.mu(k));
}

TEST_CASE("single-index delta forms")
{
    const auto t = build_table(1000);
    CHECK(n_zero_delta(t, 3) == 0);
    CHECK(n_zero_delta(t, 16) == 5);
    CHECK(n_zero_delta(t, 1000) == 392);
    CHECK(q_delta(t, 1) == 1);
    CHECK(q_delta(t, 16) == 11);
    CHECK(q_delta(t, 1000) == 608);
}

TEST_CASE("census_delta")
{
    const auto t = build_table(1000);
    CHECK(census_delta(t, 1) == Census{1, 1, 0, 0, 1, 1});
    CHECK(census_delta(t, 16) == census(t, 16));
    CHECK(census_delta(t, 1000) == oracle::census_bruteforce(1000));
    CHECK_THROWS_AS(census_delta(t, 0.5), InvalidArgument);
}

TEST_CASE("delta forms equal the square-root identities for x up to 10^3")
{
    const auto t = build_table(100);
    for (std::uint64_t x = 1; x <= 1000; ++x) {
        REQUIRE(n_zero_delta(t, x) == n_zero_moebius_sum(t, x));
        REQUIRE(q_delta(t, x) == q_squarefree(t, x));
        REQUIRE(census_delta(t, x) == census(t, x));
    }
}

TEST_CASE("trace events follow the documented layout")
{
    const auto t = build_table(100);

    TraceStream one(t, 1, TraceTarget::mertens);
    const auto e = one.next();
    REQUIRE(e);
    CHECK(*e == DeltaTraceEvent{1, 1, 1, -1, true});
    CHECK_FALSE(one.next());

    // every event: nonzero weight, hit exactly on divisibility, fixed ordering
    for (const auto target : kTargets) {
        TraceStream s(t, 60, target);
        std::uint64_t last_i = 0, last_k = 0;
        std::int64_t last_j = -1;
        for (const auto& ev : s) {
            REQUIRE(ev.weight != 0);
            const std::uint64_t d = ev.i * (ev.j ? *ev.j : ev.i);
            REQUIRE(ev.hit == (ev.k % d == 0));
            REQUIRE(ev.k >= ev.i * ev.i);
            const std::int64_t j = ev.j ? static_cast<std::int64_t>(*ev.j) : 0;
            if (ev.i == last_i && ev.k == last_k)
                REQUIRE(j > last_j);
            else if (ev.i == last_i)
                REQUIRE(ev.k > last_k);
            else
                REQUIRE(ev.i > last_i);
            last_i = ev.i;
            last_k = ev.k;
            last_j = j;
        }
    }
}

TEST_CASE("trace folds reproduce the scalar evaluators")
{
    const auto t = build_table(100);
    {
        TraceStream s(t, 16, TraceTarget::n_zero);
        CHECK(fold(s) == 5);
    }
    {
        TraceStream s(t, 100, TraceTarget::q);
        CHECK(fold(s) == static_cast<std::int64_t>(q_delta(t, 100)));
    }
    for (std::uint64_t x = 1; x <= 200; ++x) {
        for (const auto target : kTargets) {
            TraceStream s(t, x, target);
            REQUIRE(fold(s) == scalar_for(t, x, target));
        }
    }
}

TEST_CASE("trace serialization")
{
    const auto t = build_table(10);
    {
        TraceStream s(t, 1, TraceTarget::mertens);
        std::ostringstream out;
        CHECK(write_trace(out, s) == 1);
        CHECK(out.str() == "# target=mertens x=1\n1\t1\t1\t-1\t1\n# total=1\n");
    }
    {
        TraceStream s(t, 4, TraceTarget::q);
        std::ostringstream out;
        CHECK(write_trace(out, s) == 3);
        CHECK(out.str() == "# target=q x=4\n"
                           "1\t1\t\t1\t1\n2\t1\t\t1\t1\n3\t1\t\t1\t1\n4\t1\t\t1\t1\n"
                           "4\t2\t\t-1\t1\n"
                           "# total=3\n");
    }
    {
        TraceStream a(t, 50, TraceTarget::n_plus);
        TraceStream b(t, 50, TraceTarget::n_plus);
        std::ostringstream oa, ob;
        write_trace(oa, a);
        write_trace(ob, b);
        CHECK(oa.str() == ob.str());
    }
}

TEST_CASE("trace target names round-trip")
{
    for (const auto target : kTargets)
        CHECK(parse_trace_target(name(target)) == target);
    CHECK_FALSE(parse_trace_target("mu"));
}
