#include <doctest.h>

#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"
#include "geocrystal/models.hpp"
#include "geocrystal/tropical_r.hpp"
#include "geocrystal/ud.hpp"

using namespace geocrystal;

namespace {

TropExpr tv(const std::string& n) { return TropExpr::var(n); }

TestOptions samples(std::size_t k, std::uint64_t seed = 3) {
    TestOptions o;
    o.trials = k;
    o.seed = seed;
    return o;
}

const TropBox kBox{};

}  // namespace

TEST_CASE("tropicalization rules") {
    CHECK(structurally_equal(tropicalize(parse_expr("l1/l2")), tv("l1") - tv("l2")));
    CHECK(structurally_equal(tropicalize(parse_expr("x*y + z")), TropExpr::max(tv("x") + tv("y"), tv("z"))));
    CHECK(structurally_equal(tropicalize(parse_expr("x + y"), Semiring::min_plus), TropExpr::min(tv("x"), tv("y"))));
    CHECK(structurally_equal(tropicalize(parse_expr("x^3")), (tv("x") + tv("x")) + tv("x")));
    CHECK(structurally_equal(tropicalize(parse_expr("x^(-2)")), TropExpr::constant(0) - (tv("x") + tv("x"))));
    CHECK(structurally_equal(tropicalize(parse_expr("x^0 * y")), TropExpr::constant(0) + tv("y")));

    const TropExpr idem = tropicalize(parse_expr("x + x"));
    CHECK(idem.op() == TropOp::Max);
    CHECK(evaluate(idem, {{"x", -7}}) == -7);

    std::vector<std::string> warnings;
    const TropExpr two = tropicalize(parse_expr("2*x + 1*y"), Semiring::max_plus, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0] == "constant 2 at /args/0/args/0 mapped to 0");
    CHECK(evaluate(two, {{"x", 4}, {"y", 9}}) == 9);
}

TEST_CASE("tropicalization refuses subtraction") {
    try {
        tropicalize(parse_expr("(x - y) * z"));
        FAIL("expected refusal");
    } catch (const NotSubtractionFree& e) {
        CHECK(e.path() == "/args/0");
    }
    CHECK_THROWS_AS(tropicalize(parse_expr("x * (-3)")), NotSubtractionFree);
    CHECK_THROWS_AS(ud_model(model_Borel(2)), NotSubtractionFree);
}

TEST_CASE("tropicalization is a semiring homomorphism") {
    const std::vector<std::string> texts{"l1*l2 + m1/l1", "(x + y)^2 / z", "a/(b + c*d)", "x"};
    for (const auto& s1 : texts)
        for (const auto& s2 : texts) {
            const Expr e1 = parse_expr(s1), e2 = parse_expr(s2);
            const TropExpr t1 = tropicalize(e1), t2 = tropicalize(e2);
            CHECK(structurally_equal(tropicalize(e1 * e2), t1 + t2));
            CHECK(structurally_equal(tropicalize(e1 + e2), TropExpr::max(t1, t2)));
            CHECK(structurally_equal(tropicalize(e1 / e2), t1 - t2));
        }
}

TEST_CASE("min-plus is the mirror of max-plus under negation") {
    const Expr p = r_map_p(3, 2);
    const TropExpr hi = tropicalize(p), lo = tropicalize(p, Semiring::min_plus);
    Rng rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        TropPoint x, neg;
        for (const auto& v : free_variables(p)) {
            x[v] = rng.uniform(-50, 50);
            neg[v] = -x[v];
        }
        CHECK(evaluate(lo, x) == -evaluate(hi, neg));
    }
}

TEST_CASE("tropical P_i for n = 1") {
    // P_0 = l1 l2 m1 + l2 m1 m2
    const TropExpr want = TropExpr::max((tv("l1") + tv("l2")) + tv("m1"), (tv("l2") + tv("m1")) + tv("m2"));
    CHECK(structurally_equal(tropicalize(r_map_p(1, 0)), want));
    CHECK(to_string(want) == "max(l1 + l2 + m1, l2 + m1 + m2)");
    CHECK(to_json(tv("x") - TropExpr::constant(-2)).dump() ==
          R"({"args":[{"name":"x","op":"var"},{"op":"const","value":-2}],"op":"sub"})");
}

TEST_CASE("tropical identity checking") {
    const TropExpr x = tv("x"), y = tv("y"), z = tv("z");
    CHECK(check_tropical_identity(TropExpr::max(x, y) + z, TropExpr::max(x + z, y + z), kBox, samples(200)).outcome ==
          Outcome::equal);
    const Verdict v = check_tropical_identity(TropExpr::max(x, y), x + y, kBox, samples(200));
    REQUIRE(v.outcome == Outcome::counterexample);
    CHECK(v.witness->lhs != v.witness->rhs);
    CHECK(substitute(x + y, {{"y", TropExpr::constant(3)}}).rhs().value() == 3);
}

TEST_CASE("B_L operators") {
    const IntPoint l{3, -1, 4};
    CHECK(ud_crystal_operator(2, 0, 0, l) == l);
    CHECK(ud_crystal_operator(2, 1, 5, l) == IntPoint{8, -6, 4});
    CHECK(ud_crystal_operator(2, 0, 2, l) == IntPoint{1, -1, 6});
    CHECK(ud_crystal_operator(2, 2, -1, ud_crystal_operator(2, 2, 3, l)) == ud_crystal_operator(2, 2, 2, l));
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) CHECK(check_ud_operator(n, i, kBox, samples(200)).outcome == Outcome::equal);
}

TEST_CASE("tropical shadows of the crystal axioms") {
    for (int n = 1; n <= 3; ++n) {
        const CrystalModel m = model_A_affine(n, 1);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                CHECK(check_ud_axiom_ii(m, i, j, kBox, samples(100)).outcome == Outcome::equal);
                CHECK(check_ud_axiom_iv(m, i, j, kBox, samples(100)).passed());
            }
    }
    const CrystalModel d5 = model_D5_affine(1);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j) {
            CHECK(check_ud_axiom_ii(d5, i, j, kBox, samples(100)).outcome == Outcome::equal);
            CHECK(check_ud_axiom_iv(d5, i, j, kBox, samples(100)).passed());
        }
}

TEST_CASE("tensor product coefficients") {
    const CrystalModel x = model_A_affine(2, 1, "l"), y = model_A_affine(2, 1, "m");
    const auto [c1, c2] = ud_tensor_coeffs(x, y, 1);
    // Phi_1(x) = l2.x + (l1.x - l2.x), E_1(y) = m2.y
    TropPoint p{{"l1.x", 5}, {"l2.x", 0}, {"l3.x", 0}, {"m1.y", 0}, {"m2.y", 2}, {"m3.y", 0}, {"c", 1}};
    CHECK(evaluate(c1, p) == 1);
    CHECK(evaluate(c2, p) == 0);
    p["m2.y"] = 9;
    CHECK(evaluate(c1, p) == 0);
    CHECK(evaluate(c2, p) == 1);
    p["m2.y"] = 5;
    CHECK(evaluate(c1, p) == 1);

    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) {
            CHECK(check_ud_tensor_sum(n, i, kBox, samples(200)).outcome == Outcome::equal);
            CHECK(check_ud_tensor_dichotomy(n, i, 1, kBox, samples(1000)).outcome == Outcome::equal);
            CHECK(check_ud_tensor_dichotomy(n, i, -1, kBox, samples(1000)).outcome == Outcome::equal);
        }
    CHECK_THROWS_AS(check_ud_tensor_dichotomy(1, 0, 2, kBox, samples(1)), std::invalid_argument);
}

TEST_CASE("combinatorial R") {
    const auto [lo, mo] = combinatorial_R({2, 2, 2}, {-3, -3, -3});
    CHECK(lo == IntPoint{-3, -3, -3});
    CHECK(mo == IntPoint{2, 2, 2});
    // n = 1, l = (0, 2), m = (1, 1): UDP_1 = max(3, 2), UDP_2 = max(3, 4)
    const auto [a, b] = combinatorial_R({0, 2}, {1, 1});
    CHECK(a == IntPoint{0, 2});
    CHECK(b == IntPoint{1, 1});
    const auto [c, d] = combinatorial_R({0, 3}, {2, 0});
    // UDP_1 = max(3, 2), UDP_2 = max(5, 5)
    CHECK(c == IntPoint{0, 2});
    CHECK(d == IntPoint{2, 1});

    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        CHECK(check_ud_r_matches(n, kBox, samples(200)).outcome == Outcome::equal);
        CHECK(check_ud_level_swap(n, kBox, samples(200)).outcome == Outcome::equal);
        CHECK(check_ud_homogeneous(n, kBox, samples(50)).outcome == Outcome::equal);
        CHECK(check_ud_yang_baxter(n, kBox, samples(200)).outcome == Outcome::equal);
        for (int i = 0; i <= n; ++i) {
            CHECK(check_ud_r1(n, i, kBox, samples(200)).outcome == Outcome::equal);
            CHECK(check_ud_r2(n, i, kBox, samples(200)).outcome == Outcome::equal);
            CHECK(check_ud_r3(n, i, kBox, samples(200)).outcome == Outcome::equal);
        }
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t)
                CHECK(check_ud_eps_invariance(n, {s, t}, kBox, samples(200)).outcome == Outcome::equal);
    }
}
