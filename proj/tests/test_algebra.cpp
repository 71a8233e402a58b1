// Exact-arithmetic layer: rationals and multivariate polynomials.

#include <catch2/catch_amalgamated.hpp>

#include "norden/poly.hpp"
#include "norden/rational.hpp"

#include <random>

using norden::Poly;
using norden::Rational;
using norden::SpacePtr;

namespace {

SpacePtr lambda_space() {
    static SpacePtr space = norden::make_space({"l1", "l2", "l3", "l4"});
    return space;
}

Poly var(std::size_t i) { return Poly::variable(lambda_space(), i); }

// Uniformly random small polynomial for the ring-axiom checks.
Poly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> terms(0, 4);
    std::uniform_int_distribution<int> exp(0, 2);
    Poly p = Poly::zero(lambda_space());
    const int t = terms(rng);
    for (int k = 0; k < t; ++k) {
        Poly term = Poly::constant(lambda_space(), Rational(num(rng), den(rng)));
        for (std::size_t v = 0; v < 4; ++v) {
            const int e = exp(rng);
            for (int j = 0; j < e; ++j) term *= var(v);
        }
        p += term;
    }
    return p;
}

}  // namespace

TEST_CASE("rational parsing and canonical rendering") {
    CHECK(norden::parse_rational("0") == 0);
    CHECK(norden::parse_rational("-0") == 0);
    CHECK(norden::parse_rational("42") == 42);
    CHECK(norden::parse_rational("-7") == -7);
    CHECK(norden::parse_rational("2/4") == Rational(1, 2));
    CHECK(norden::parse_rational("-10/4") == Rational(-5, 2));

    CHECK(norden::to_string(Rational(1, 2)) == "1/2");
    CHECK(norden::to_string(Rational(-5, 2)) == "-5/2");
    CHECK(norden::to_string(Rational(8)) == "8");
    CHECK(norden::to_string(Rational(0)) == "0");
    // Canonicalization puts the sign on the numerator.
    CHECK(norden::to_string(Rational(3) / Rational(-6)) == "-1/2");

    CHECK_THROWS_AS(norden::parse_rational(""), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational(" 1"), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("1 "), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("+1"), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("1/-2"), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("1/0"), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("1.5"), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("1/2/3"), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_rational("a"), norden::parse_error);
}

TEST_CASE("polynomial canonical serialization") {
    const Poly l1 = var(0), l2 = var(1), l3 = var(2), l4 = var(3);

    // Graded-descending order with explicit coefficients: these two strings
    // are the contract for every value the reports print.
    const Poly tau = Rational(-3, 2) * (l1 * l1 + l2 * l2 - l3 * l3 - l4 * l4);
    CHECK(norden::to_string(tau) ==
          "-3/2*l1^2 - 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2");
    CHECK(norden::to_string(-l1) == "-1*l1");

    CHECK(norden::to_string(Poly::zero(lambda_space())) == "0");
    CHECK(norden::to_string(Poly::constant(lambda_space(), Rational(5))) == "5");
    CHECK(norden::to_string(Poly::constant(lambda_space(), Rational(-5, 3))) ==
          "-5/3");
    CHECK(norden::to_string(l1 * l3 + l2 * l4) == "1*l1*l3 + 1*l2*l4");

    // Mixed degrees: degree 2 before degree 1 before constants; within a
    // degree the lexicographically greater exponent vector first.
    const Poly mixed = l2 - l1 * l1 + Rational(7) + l1 * l2 - l4;
    CHECK(norden::to_string(mixed) == "-1*l1^2 + 1*l1*l2 + 1*l2 - 1*l4 + 7");

    // Exponents of 1 print bare; higher exponents use '^'.
    CHECK(norden::to_string(l1 * l1 * l1 * l2) == "1*l1^3*l2");
}

TEST_CASE("polynomial parsing grammar") {
    const SpacePtr S = lambda_space();
    const Poly l1 = var(0), l2 = var(1), l3 = var(2), l4 = var(3);

    CHECK(norden::parse_poly("0", S).is_zero());
    CHECK(norden::parse_poly("-1*l1", S) == -l1);
    CHECK(norden::parse_poly("l1", S) == l1);
    CHECK(norden::parse_poly("-l1", S) == -l1);
    CHECK(norden::parse_poly("+l1", S) == l1);
    CHECK(norden::parse_poly("l1*l3 + l2*l4", S) == l1 * l3 + l2 * l4);
    CHECK(norden::parse_poly("l1*l1", S) == l1 * l1);
    CHECK(norden::parse_poly("l1^2", S) == l1 * l1);
    CHECK(norden::parse_poly("3/2*l3^2", S) == Rational(3, 2) * l3 * l3);
    CHECK(norden::parse_poly("1 - 1", S).is_zero());
    CHECK(norden::parse_poly("l1 - l1", S).is_zero());
    CHECK(norden::parse_poly("  l1  +  2 * l2  ", S) == l1 + 2 * l2);
    CHECK(norden::parse_poly("-3/2*l1^2 - 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2", S) ==
          Rational(-3, 2) * (l1 * l1 + l2 * l2 - l3 * l3 - l4 * l4));

    CHECK_THROWS_AS(norden::parse_poly("", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("  ", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("l5", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("l1^0", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("l1 +", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("l1 l2", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("1/0*l1", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("2*", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("l1^", S), norden::parse_error);
    CHECK_THROWS_AS(norden::parse_poly("l1*2", S), norden::parse_error);

    // Error messages carry positions.
    try {
        norden::parse_poly("l1 + l9", S);
        FAIL("expected parse_error");
    } catch (const norden::parse_error& e) {
        CHECK(std::string(e.what()).find("position 5") != std::string::npos);
        CHECK(std::string(e.what()).find("l9") != std::string::npos);
    }
}

TEST_CASE("serialize-parse round trip is the identity on canonical forms") {
    std::mt19937 rng(20260814);
    for (int k = 0; k < 200; ++k) {
        const Poly p = random_poly(rng);
        const std::string s = norden::to_string(p);
        const Poly q = norden::parse_poly(s, lambda_space());
        CHECK(q == p);
        CHECK(norden::to_string(q) == s);
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(987654321);
    for (int k = 0; k < 60; ++k) {
        const Poly a = random_poly(rng);
        const Poly b = random_poly(rng);
        const Poly c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Poly::zero(lambda_space()));
        CHECK(a + Poly::zero(lambda_space()) == a);
        CHECK(a * Poly::constant(lambda_space(), 1) == a);
        CHECK(a * Poly::zero(lambda_space()) == Poly::zero(lambda_space()));
        CHECK(-(-a) == a);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    const Poly l1 = var(0), l2 = var(1), l3 = var(2), l4 = var(3);

    // Oracle pinned by hand: -8*(l1*l3 + l2*l4) at (1,0,1,0) is -8.
    const Poly m = Rational(-8) * (l1 * l3 + l2 * l4);
    CHECK(m.eval({1, 0, 1, 0}) == -8);
    CHECK(m.eval({1, 2, 2, -1}) == -8 * (1 * 2 + 2 * -1));
    CHECK(m.eval({0, 0, 0, 0}) == 0);

    std::mt19937 rng(55555);
    std::uniform_int_distribution<int> num(-5, 5);
    for (int k = 0; k < 40; ++k) {
        const Poly a = random_poly(rng);
        const Poly b = random_poly(rng);
        const std::vector<Rational> at{Rational(num(rng)), Rational(num(rng), 2),
                                       Rational(num(rng)), Rational(num(rng), 3)};
        CHECK((a + b).eval(at) == a.eval(at) + b.eval(at));
        CHECK((a * b).eval(at) == a.eval(at) * b.eval(at));
    }

    CHECK_THROWS_AS(m.eval({1, 2, 3}), norden::error);
    CHECK_THROWS_AS(m.eval({1, 2, 3, 4, 5}), norden::error);
}

TEST_CASE("constants lift into any parameter space") {
    const Poly l1 = var(0);
    const Poly c = Rational(1, 2);  // empty-space constant
    CHECK(norden::to_string(l1 + c) == "1*l1 + 1/2");
    CHECK(norden::to_string(c * l1) == "1/2*l1");
    CHECK(l1 + 0 == l1);
    CHECK(l1 * 1 == l1);
    CHECK(Poly(Rational(2)) + Poly(Rational(3)) == Poly(Rational(5)));

    // Non-constant polynomials over different spaces must not mix.
    const SpacePtr other = norden::make_space({"a"});
    const Poly a = Poly::variable(other, 0);
    CHECK_THROWS_AS(l1 + a, norden::error);
    CHECK_THROWS_AS(l1 * a, norden::error);
    CHECK_THROWS_AS(static_cast<void>(l1 == a), norden::error);
    // Zero over one space compares equal to zero over another: both constant.
    CHECK(Poly::zero(other) == Poly::zero(lambda_space()));
}

TEST_CASE("rational-multiple detection works in both directions") {
    const Poly l1 = var(0), l2 = var(1), l3 = var(2), l4 = var(3);
    const Poly zero = Poly::zero(lambda_space());

    const Poly p = l1 * l3 + l2 * l4;
    const Poly q = Rational(-8) * p;
    auto c = norden::rational_multiple_of(q, p);
    REQUIRE(c.has_value());
    CHECK(*c == -8);
    c = norden::rational_multiple_of(p, q);
    REQUIRE(c.has_value());
    CHECK(*c == Rational(-1, 8));

    CHECK(norden::proportional(p, q));
    CHECK(norden::proportional(zero, p));   // 0 = 0*p
    CHECK(norden::proportional(p, zero));
    CHECK_FALSE(norden::rational_multiple_of(p, zero).has_value());

    // The two quadratic invariants of the bundled family are independent.
    const Poly c1 = l1 * l1 + l2 * l2 - l3 * l3 - l4 * l4;
    const Poly c2 = l1 * l3 + l2 * l4;
    CHECK_FALSE(norden::proportional(c1, c2));

    // Same leading monomial but differing tails.
    CHECK_FALSE(norden::proportional(l1 + l2, l1 + l3));
}

TEST_CASE("parameter space validation") {
    CHECK_THROWS_AS(norden::make_space({"l1", "l1"}), norden::error);
    CHECK_THROWS_AS(norden::make_space({"1l"}), norden::error);
    CHECK_THROWS_AS(norden::make_space({""}), norden::error);
    CHECK_THROWS_AS(norden::make_space({"bad name"}), norden::error);
    const SpacePtr ok = norden::make_space({"alpha_1", "b2"});
    CHECK(ok->find("b2") == std::size_t{1});
    CHECK_FALSE(ok->find("nope").has_value());
}
