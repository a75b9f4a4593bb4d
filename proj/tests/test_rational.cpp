#include <catch_amalgamated.hpp>

#include <random>

#include "eqdesign/rational.hpp"

using namespace eqdesign;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    Rational r(Int(6), Int(-4));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(Rational(Int(0), Int(7)) == Rational(0));
    CHECK_THROWS_AS(Rational(Int(1), Int(0)), InputError);
}

TEST_CASE("rational arithmetic and comparisons are exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(a > b);
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), InputError);
}

TEST_CASE("floor and ceil on both signs") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(4).floor() == 4);
    CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("parse and print round-trip through p/q strings") {
    CHECK(Rational::parse("2/3") == Rational(2, 3));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("-6/4").str() == "-3/2");
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(3).str() == "3");
    CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rational::parse("a/b"), InputError);
    CHECK_THROWS_AS(Rational::parse("1.5"), InputError);
    CHECK_THROWS_AS(Rational::parse(""), InputError);
}

namespace {

// reference search over all denominators up to the bound
Rational closest_brute(const Rational& x, long long max_den) {
    Rational best;
    bool have = false;
    for (long long q = 1; q <= max_den; ++q) {
        Int p = (x * Rational(q)).floor();
        for (Int cand_p : {p, Int(p + 1)}) {
            Rational cand(cand_p, q);
            if (!have || (x - cand).abs() < (x - best).abs())
                best = cand, have = true;
        }
    }
    return best;
}

} // namespace

TEST_CASE("bounded-denominator rounding matches brute-force search") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 300; ++round) {
        long long num = static_cast<long long>(rng() % 2001) - 1000;
        long long den = 1 + static_cast<long long>(rng() % 997);
        long long bound = 1 + static_cast<long long>(rng() % 12);
        Rational x(num, den);
        Rational got = closest_with_denominator_at_most(x, bound);
        Rational want = closest_brute(x, bound);
        CHECK((x - got).abs() == (x - want).abs());
        CHECK(got.denominator() <= bound);
    }
}

TEST_CASE("bounded-denominator rounding recovers exact game values") {
    // the regime used by the mean-payoff solver: x within half a gap of p/q
    CHECK(closest_with_denominator_at_most(Rational(499999, 1000000), 5) == Rational(1, 2));
    CHECK(closest_with_denominator_at_most(Rational(2, 3), 5) == Rational(2, 3));
    CHECK(closest_with_denominator_at_most(Rational(-499999, 1000000), 5) == Rational(-1, 2));
}

TEST_CASE("common denominator is the lcm") {
    CHECK(common_denominator({Rational(1, 4), Rational(5, 6), Rational(2)}) == 12);
    CHECK(common_denominator({}) == 1);
}
