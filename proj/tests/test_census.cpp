#include <doctest.h>

#include "moebius/census.hpp"
#include "moebius/error.hpp"

using namespace moebius;

TEST_CASE("census invariants detect each broken relation")
{
    const Census good{16, 5, 6, 5, 11, -1};
    CHECK(census_consistent(good));
    CHECK_NOTHROW(check_census(good));

    Census bad = good;
    bad.n_zero = 4;
    CHECK_FALSE(census_consistent(bad));
    CHECK_THROWS_AS(check_census(bad), InternalError);

    bad = good;
    bad.m = 1;
    CHECK_THROWS_AS(check_census(bad), InternalError);

    bad = good;
    bad.q = 10;
    CHECK_THROWS_AS(check_census(bad), InternalError);
}

TEST_CASE("frequencies are exact and sum to one")
{
    const auto f1 = frequencies(Census{1, 1, 0, 0, 1, 1});
    CHECK(f1.plus == Rational{1, 1});
    CHECK(f1.minus == Rational{0, 1});
    CHECK(f1.zero == Rational{0, 1});

    const auto f16 = frequencies(Census{16, 5, 6, 5, 11, -1});
    CHECK(f16.plus == Rational{5, 16});
    CHECK(f16.minus == Rational{6, 16});
    CHECK(f16.zero == Rational{5, 16});
    CHECK((f16.plus + f16.minus + f16.zero) == Rational{1, 1});

    CHECK_THROWS_AS(frequencies(Census{}), InvalidArgument);
}

TEST_CASE("rational addition reduces")
{
    CHECK((Rational{1, 6} + Rational{1, 3}) == Rational{1, 2});
    CHECK((Rational{0, 7} + Rational{0, 9}) == Rational{0, 1});
    CHECK((Rational{999'999'999'999, 1'000'000'000'000} + Rational{1, 1'000'000'000'000}) == Rational{1, 1});
    CHECK(Rational{6, 16}.reduced() == Rational{3, 8});
}

TEST_CASE("decimal rendering rounds half to even")
{
    CHECK(to_decimal({1, 1}) == "1.0000000000");
    CHECK(to_decimal({0, 1}) == "0.0000000000");
    CHECK(to_decimal({5, 16}) == "0.3125000000");
    CHECK(to_decimal({3, 10}) == "0.3000000000");
    CHECK(to_decimal({1, 3}) == "0.3333333333");
    CHECK(to_decimal({2, 3}) == "0.6666666667");
    CHECK(to_decimal({1, 8}, 2) == "0.12");
    CHECK(to_decimal({3, 8}, 2) == "0.38");
    CHECK(to_decimal({5, 8}, 2) == "0.62");
    CHECK(to_decimal({1, 2}, 0) == "0");
    CHECK(to_decimal({3, 2}, 0) == "2");
    CHECK(to_decimal({392'074, 1'000'000}) == "0.3920740000");
}
