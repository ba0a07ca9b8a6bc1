#include <doctest.h>

#include "geocrystal/error.hpp"
#include "geocrystal/expr.hpp"
#include "geocrystal/expr_io.hpp"
#include "geocrystal/identity.hpp"

using namespace geocrystal;

namespace {

Expr random_tree(Rng& rng, int depth) {
    static const char* names[] = {"x", "y", "z", "l1", "m.x"};
    if (depth == 0 || rng.uniform(0, 3) == 0) {
        if (rng.coin()) return var(names[rng.uniform(0, 4)]);
        return cst(sample_scalar(rng, 9, false));
    }
    switch (rng.uniform(0, 4)) {
        case 0: return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
        case 1: return random_tree(rng, depth - 1) - random_tree(rng, depth - 1);
        case 2: return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
        case 3: return random_tree(rng, depth - 1) / random_tree(rng, depth - 1);
        default: return pow(random_tree(rng, depth - 1), rng.uniform(-3, 3));
    }
}

SampleSpec free_spec(std::vector<std::string> vars, bool positive = true) {
    SampleSpec s;
    s.variables = std::move(vars);
    s.positive = positive;
    return s;
}

}  // namespace

TEST_CASE("parser builds the expected trees") {
    const Expr e = parse_expr("l1*l2 + m1/l1");
    CHECK(structurally_equal(e, var("l1") * var("l2") + var("m1") / var("l1")));

    CHECK(structurally_equal(parse_expr("(c-1)/e1"), (var("c") - cst(1)) / var("e1")));
    CHECK(structurally_equal(parse_expr("l2*l3*l4"), (var("l2") * var("l3")) * var("l4")));
    CHECK(structurally_equal(parse_expr("a - b - c"), (var("a") - var("b")) - var("c")));
    CHECK(structurally_equal(parse_expr("x^2^3"), pow(pow(var("x"), 2), 3)));
    CHECK(structurally_equal(parse_expr("x^2/3"), pow(var("x"), 2) / cst(3)));
    CHECK(structurally_equal(parse_expr("x^(-2)"), pow(var("x"), -2)));
    CHECK(structurally_equal(parse_expr("x^-1"), pow(var("x"), -1)));
    CHECK(structurally_equal(parse_expr("2/3*x"), cst(Rational(2, 3)) * var("x")));
    CHECK(structurally_equal(parse_expr("-2/3"), cst(Rational(-2, 3))));
    CHECK(structurally_equal(parse_expr("-x"), cst(-1) * var("x")));
    CHECK(structurally_equal(parse_expr("2 / 3"), cst(2) / cst(3)));
    CHECK(structurally_equal(parse_expr("l.x_1"), var("l.x_1")));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_expr("0"), ParseError);
    CHECK_THROWS_AS(parse_expr("x + 0/1"), ParseError);
    CHECK_THROWS_AS(parse_expr("x +"), ParseError);
    CHECK_THROWS_AS(parse_expr("(x"), ParseError);
    CHECK_THROWS_AS(parse_expr("x ^ y"), ParseError);
    CHECK_THROWS_AS(parse_expr("x $ y"), ParseError);
    try {
        parse_expr("x +\n  * y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("print then parse is the identity on 500 random trees") {
    Rng rng(31);
    for (int k = 0; k < 500; ++k) {
        const Expr e = random_tree(rng, 5);
        const std::string text = to_string(e);
        INFO(text);
        REQUIRE(structurally_equal(parse_expr(text), e));
        REQUIRE(structurally_equal(expr_from_json(to_json(e)), e));
    }
}

TEST_CASE("printer output") {
    CHECK(to_string(parse_expr("a-(b-c)")) == "a - (b - c)");
    CHECK(to_string(parse_expr("(a*b)^2")) == "(a * b)^2");
    CHECK(to_string(parse_expr("x^(-1)")) == "x^(-1)");
    CHECK(to_string(parse_expr("-3*x")) == "(-3) * x");
    CHECK(to_string(parse_expr("(2/3)^2")) == "(2/3)^2");
}

TEST_CASE("json tree form") {
    const auto j = to_json(parse_expr("x + 1/2"));
    CHECK(j["op"] == "add");
    CHECK(j["args"][0]["op"] == "var");
    CHECK(j["args"][1]["value"] == "1/2");
    CHECK(to_json(parse_expr("x^3"))["exponent"] == 3);
    CHECK_THROWS(expr_from_json(nlohmann::json{{"op", "frob"}, {"args", nlohmann::json::array()}}));
}

TEST_CASE("evaluation") {
    CHECK(evaluate(parse_expr("l1*l2"), {{"l1", 2}, {"l2", 3}}) == Rational(6));
    CHECK(evaluate(parse_expr("e1*e2 - e12"), {{"e1", 3}, {"e2", 4}, {"e12", 5}}) == Rational(7));
    CHECK(evaluate(parse_expr("x/x"), {{"x", Rational(5, 3)}}) == Rational(1));
    CHECK(evaluate(parse_expr("x^(-2)"), {{"x", Rational(5, 7)}}) == Rational(49, 25));
    CHECK_THROWS_AS(evaluate(parse_expr("x/(y-y)"), {{"x", 1}, {"y", 2}}), DivisionByZero);
    try {
        evaluate(parse_expr("x + q"), {{"x", 1}});
        FAIL("expected unbound");
    } catch (const UnboundVariable& e) {
        CHECK(e.name() == "q");
    }
}

TEST_CASE("evaluate is a homomorphism on random trees") {
    Rng rng(77);
    const auto spec = free_spec({"x", "y", "z", "l1", "m.x"}, false);
    int checked = 0;
    for (int k = 0; k < 300; ++k) {
        const Expr a = random_tree(rng, 3);
        const Expr b = random_tree(rng, 3);
        const auto p = sample_point(spec, rng);
        try {
            const Rational va = evaluate(a, p), vb = evaluate(b, p);
            REQUIRE(evaluate(a + b, p) == va + vb);
            REQUIRE(evaluate(a - b, p) == va - vb);
            REQUIRE(evaluate(a * b, p) == va * vb);
            REQUIRE(evaluate(pow(a, 3), p) == va * va * va);
            if (!vb.is_zero()) REQUIRE(evaluate(a / b, p) == va / vb);
            ++checked;
        } catch (const DivisionByZero&) {
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("substitution and sharing") {
    const Expr x = var("x");
    const Expr shared = x * x + cst(1);
    const Expr e = shared * shared;
    CHECK(dag_size(e) < 10);
    const Expr s = substitute(e, {{"x", var("y") + cst(2)}});
    CHECK(free_variables(s) == std::set<std::string>{"y"});
    CHECK(evaluate(s, {{"y", 1}}) == Rational(100));
    CHECK(dag_size(s) == dag_size(e) + 2);
    // simultaneous, not sequential
    const Expr swap = substitute(var("a") - var("b"), {{"a", var("b")}, {"b", var("a")}});
    CHECK(structurally_equal(swap, var("b") - var("a")));
    const Expr renamed = rename(var("a") * var("b"), [](const std::string& n) { return n + ".x"; });
    CHECK(free_variables(renamed) == std::set<std::string>{"a.x", "b.x"});
    CHECK_THROWS(cst(0));
    Expr list[] = {var("a"), var("b"), var("c")};
    CHECK(evaluate(sum_of(list), {{"a", 1}, {"b", 2}, {"c", 3}}) == Rational(6));
    CHECK(evaluate(product_of({}), {}) == Rational(1));
    CHECK_THROWS(sum_of({}));
}

TEST_CASE("identity testing") {
    const auto spec = free_spec({"x", "y"}, false);
    TestOptions opts;
    const Expr lhs = parse_expr("(x+y)^2");
    const Expr rhs = parse_expr("x^2 + 2*x*y + y^2");
    CHECK(identical_on_domain(lhs, rhs, spec, opts).outcome == Outcome::equal);
    CHECK(identical_on_domain(rhs, lhs, spec, opts).outcome == Outcome::equal);
    CHECK(identical_on_domain(lhs, lhs, spec, opts).outcome == Outcome::equal);

    const auto bad = identical_on_domain(parse_expr("x*y"), parse_expr("x+y"), spec, opts);
    REQUIRE(bad.outcome == Outcome::counterexample);
    REQUIRE(bad.witness);
    CHECK(bad.witness->lhs == bad.witness->point.at("x") * bad.witness->point.at("y"));
    CHECK(bad.witness->lhs != bad.witness->rhs);
    const auto bad2 = identical_on_domain(parse_expr("x+y"), parse_expr("x*y"), spec, opts);
    CHECK(bad2.outcome == Outcome::counterexample);

    // a pole everywhere
    CHECK_THROWS_AS(identical_on_domain(parse_expr("x/(y-y)"), var("x"), spec, opts), DomainTooThin);

    // poles on a thin set are skipped
    const auto spec1 = free_spec({"x"}, false);
    SampleSpec small = spec1;
    small.magnitude = 2;
    const auto v = identical_on_domain(parse_expr("(x^2-1)/(x-1)"), parse_expr("x+1"), small, opts);
    CHECK(v.outcome == Outcome::equal);
    CHECK(v.resamples > 0);
}

TEST_CASE("partition-sum expansion agrees with the ε* recurrence on free symbols") {
    // ε*_123 by recurrence over the first block.
    const Expr e1 = var("e1"), e2 = var("e2"), e3 = var("e3"), e12 = var("e12"), e23 = var("e23"),
               e123 = var("e123");
    const Expr s23 = e2 * e3 - e23;
    const Expr rec = e1 * s23 - e12 * e3 + e123;
    const Expr expansion = parse_expr("e123 - e1*e23 - e12*e3 + e1*e2*e3");
    const auto spec = free_spec({"e1", "e2", "e3", "e12", "e23", "e123"}, false);
    CHECK(identical_on_domain(rec, expansion, spec, {}).outcome == Outcome::equal);
}

TEST_CASE("subtraction-free certificate") {
    CHECK(certify_subtraction_free(parse_expr("l2*l3*m3 + l3*m2*m3")).free);
    CHECK(certify_subtraction_free(cst(1)).free);
    const auto v = certify_subtraction_free(parse_expr("e1*e2 - e12"));
    CHECK_FALSE(v.free);
    CHECK(v.path == "/");
    const auto w = certify_subtraction_free(parse_expr("x + y*(-2)"));
    CHECK_FALSE(w.free);
    CHECK(w.path == "/args/1/args/1");
    const auto u = certify_subtraction_free(parse_expr("x / (y - 1)"));
    CHECK(u.path == "/args/1");
}
