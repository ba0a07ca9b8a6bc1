#include <doctest.h>

#include <sstream>

#include "geocrystal/error.hpp"
#include "geocrystal/random.hpp"
#include "geocrystal/rational.hpp"
#include "geocrystal/sampling.hpp"

using namespace geocrystal;

TEST_CASE("rational arithmetic is exact") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 3) * Rational(3, 2) == Rational(1));
    CHECK(Rational(5, 7).pow(-2) == Rational(49, 25));
    CHECK(Rational(-3, 4).pow(3) == Rational(-27, 64));
    CHECK(Rational(7).pow(0) == Rational(1));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).denominator() == 2);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 3) > Rational(-1, 2));
    CHECK(abs(Rational(-2, 5)) == Rational(2, 5));
}

TEST_CASE("division by zero throws instead of producing garbage") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
    CHECK_THROWS_AS(Rational(0).pow(-1), DivisionByZero);
    CHECK_THROWS_AS(Rational(3, 0), DivisionByZero);
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("-4/6") == Rational(-2, 3));
    CHECK(Rational::parse("10/5").str() == "2");
    CHECK(Rational(-2, 3).str() == "-2/3");
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1 /2"));
    CHECK_THROWS(Rational::parse(""));
    std::ostringstream os;
    os << Rational(3, 9);
    CHECK(os.str() == "1/3");
}

TEST_CASE("field axioms on 1000 random triples") {
    Rng rng(2024);
    for (int k = 0; k < 1000; ++k) {
        const Rational a = sample_scalar(rng, 1000, false);
        const Rational b = sample_scalar(rng, 1000, false);
        const Rational c = sample_scalar(rng, 1000, false);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE(a * a.inverse() == Rational(1));
        REQUIRE(a - a == Rational(0));
        REQUIRE((a / b) * b == a);
    }
}

TEST_CASE("rng is deterministic and in range") {
    Rng a(9), b(9);
    for (int k = 0; k < 100; ++k) {
        const auto x = a.uniform(-5, 5);
        CHECK(x == b.uniform(-5, 5));
        CHECK(x >= -5);
        CHECK(x <= 5);
    }
    CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
    CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
    CHECK_THROWS(a.uniform(3, 2));
}

TEST_CASE("sample_point satisfies product constraints exactly") {
    SampleSpec two;
    two.variables = {"l1", "l2"};
    two.constraints = {{{"l1", "l2"}, Rational(4)}};
    two.seed = 7;
    const auto p = sample_point(two);
    CHECK(p.at("l1") * p.at("l2") == Rational(4));
    CHECK(p.at("l1").sign() > 0);
    CHECK(p.at("l2").sign() > 0);

    SampleSpec free;
    free.variables = {"x"};
    free.seed = 1;
    free.positive = false;
    CHECK_FALSE(sample_point(free).at("x").is_zero());

    SampleSpec three;
    three.variables = {"l1", "l2", "l3"};
    three.constraints = {{{"l1", "l2", "l3"}, Rational(8)}};
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const auto q = sample_point(three, rng);
        CHECK(q.at("l1") * q.at("l2") * q.at("l3") == Rational(8));
    }
}

TEST_CASE("sample_point is reproducible") {
    SampleSpec s;
    s.variables = {"a", "b", "c"};
    s.constraints = {{{"a", "b"}, Rational(3, 2)}};
    s.seed = 42;
    CHECK(sample_point(s) == sample_point(s));
    SampleSpec t = s;
    t.seed = 43;
    CHECK(sample_point(s) != sample_point(t));
}

TEST_CASE("several constraints solved in dependency order") {
    SampleSpec s;
    s.variables = {"a", "b", "c", "d"};
    s.constraints = {{{"a", "b"}, Rational(2)}, {{"b", "c", "d"}, Rational(5, 3)}, {{"d"}, Rational(7)}};
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const auto p = sample_point(s, rng);
        CHECK(p.at("a") * p.at("b") == Rational(2));
        CHECK(p.at("b") * p.at("c") * p.at("d") == Rational(5, 3));
        CHECK(p.at("d") == Rational(7));
    }
}

TEST_CASE("unsatisfiable or malformed constraints are rejected") {
    SampleSpec clash;
    clash.variables = {"a", "b"};
    clash.constraints = {{{"a", "b"}, Rational(2)}, {{"b", "a"}, Rational(3)}};
    CHECK_THROWS_AS(sample_point(clash), ConstraintConflict);

    SampleSpec cycle;
    cycle.variables = {"a", "b"};
    cycle.constraints = {{{"a"}, Rational(2)}, {{"b"}, Rational(2)}, {{"a", "b"}, Rational(3)}};
    CHECK_THROWS_AS(sample_point(cycle), ConstraintConflict);

    SampleSpec unknown;
    unknown.variables = {"a"};
    unknown.constraints = {{{"z"}, Rational(2)}};
    CHECK_THROWS_AS(sample_point(unknown), std::invalid_argument);

    SampleSpec zero;
    zero.variables = {"a"};
    zero.constraints = {{{"a"}, Rational(0)}};
    CHECK_THROWS_AS(sample_point(zero), std::invalid_argument);

    SampleSpec negative;
    negative.variables = {"a"};
    negative.constraints = {{{"a"}, Rational(-1)}};
    CHECK_THROWS_AS(sample_point(negative), std::invalid_argument);
    negative.positive = false;
    CHECK(sample_point(negative).at("a") == Rational(-1));
}

TEST_CASE("merge combines specs") {
    SampleSpec a;
    a.variables = {"x"};
    SampleSpec b;
    b.variables = {"y"};
    b.positive = false;
    b.magnitude = 5000;
    const auto m = merge(a, b);
    CHECK(m.variables.size() == 2);
    CHECK_FALSE(m.positive);
    CHECK(m.magnitude == 5000);
}
