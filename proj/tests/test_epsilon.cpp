#include <doctest.h>

#include "geocrystal/epsilon.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"
#include "geocrystal/models.hpp"

using namespace geocrystal;

namespace {

TestOptions opts(std::uint64_t seed = 1, std::size_t trials = 100) {
    TestOptions o;
    o.seed = seed;
    o.trials = trials;
    return o;
}

bool equal(const Verdict& v) { return v.outcome == Outcome::equal; }

SampleSpec symbols(int k) {
    SampleSpec s;
    s.positive = false;
    for (int a = 1; a <= k; ++a)
        for (int b = a; b <= k; ++b) s.variables.push_back(symbol_name({a, b}));
    return s;
}

}  // namespace

TEST_CASE("partitions in bitmask order") {
    CHECK(enumerate_partitions({1, 1}) == std::vector<Partition>{{{1, 1}}});
    const auto two = enumerate_partitions({1, 2});
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Partition{{1, 2}});
    CHECK(two[1] == Partition{{1, 1}, {2, 2}});
    const auto three = enumerate_partitions({1, 3});
    REQUIRE(three.size() == 4);
    CHECK(three[1] == Partition{{1, 1}, {2, 3}});
    CHECK(three[2] == Partition{{1, 2}, {3, 3}});
    CHECK(three[3].size() == 3);
    CHECK_THROWS(enumerate_partitions({2, 1}));
}

TEST_CASE("partition counts match binomial coefficients") {
    for (int len = 1; len <= 7; ++len) {
        const auto ps = enumerate_partitions({1, len});
        CHECK(ps.size() == (std::size_t{1} << (len - 1)));
        std::map<std::size_t, int> by_length;
        for (const auto& p : ps) by_length[p.size()]++;
        long binom = 1;
        for (int k = 1; k <= len; ++k) {
            CHECK(by_length[static_cast<std::size_t>(k)] == binom);
            binom = binom * (len - k) / k;
        }
        int even = 0, odd = 0;
        for (const auto& p : ps) ((len - static_cast<int>(p.size())) % 2 == 0 ? even : odd)++;
        CHECK(even == (len == 1 ? 1 : (1 << (len - 2))));
        CHECK(odd == (len == 1 ? 0 : (1 << (len - 2))));
    }
}

TEST_CASE("eps* from eps on free symbols") {
    const auto sys = symbolic_system(3);
    CHECK(to_string(sys.eps_star({1, 1})) == "e1");
    CHECK(to_string(sys.eps_star({1, 2})) == "e1 * e2 - e1_2");
    const Expr want = parse_expr("e1_3 - e1*e2_3 - e1_2*e3 + e1*e2*e3");
    CHECK(equal(identical_on_domain(sys.eps_star({1, 3}), want, symbols(3), opts())));
    CHECK(evaluate(sys.eps_star({1, 2}), {{"e1", 3}, {"e2", 4}, {"e1_2", 5}}) == Rational(7));
    CHECK_FALSE(certify_subtraction_free(sys.eps_star({1, 2})).free);
}

TEST_CASE("recurrence route equals the partition sum symbolically") {
    const auto sys = symbolic_system(5);
    const auto spec = symbols(5);
    for (const auto& j : sys.intervals())
        CHECK(equal(identical_on_domain(eps_star_by_recurrence(sys, j), sys.eps_star(j), spec, opts())));
}

TEST_CASE("missing entries are reported") {
    EpsilonSystem sys({1, 2});
    sys.set_eps({1, 1}, var("a"));
    CHECK_THROWS_AS(sys.eps({1, 2}), ModelError);
    CHECK_THROWS_AS(eps_star_from_eps(sys, {1, 2}), ModelError);
    CHECK_THROWS_AS(sys.set_eps({0, 1}, var("a")), ModelError);
    CHECK(structurally_equal(sys.eps({2, 1}), Expr::one()));
}

namespace {

std::vector<int> one_to(int n) {
    std::vector<int> c;
    for (int i = 1; i <= n; ++i) c.push_back(i);
    return c;
}

// Runs every table check on one system; returns the number of failing checks.
int failures(const EpsilonSystem& sys, const CrystalModel& m, std::size_t trials) {
    int bad = 0;
    auto count = [&](const Verdict& v) { bad += v.passed() ? 0 : 1; };
    for (const auto& j : sys.intervals()) {
        count(check_partition_relation(sys, m, j, opts(1, trials)));
        count(check_alternating_identities(sys, m, j, opts(2, trials)));
        count(check_recurrence_matches_partition(sys, m, j, opts(3, trials)));
        for (int label : sys.chain()) {
            count(check_epsilon_axiom(sys, m, j, label, opts(4, trials)));
            for (int other : sys.chain())
                if (other != label) count(check_well_defined(sys, m, label, other, j, opts(5, trials / 4 + 1)));
        }
    }
    for (int s = 2; s <= sys.size(); ++s) count(check_adjacent_sum(sys, m, s, opts(6, trials)));
    return bad;
}

}  // namespace

TEST_CASE("B_L local system") {
    for (int n = 2; n <= 4; ++n) {
        const auto m = model_A_affine(n, 3);
        const auto sys = local_epsilon(m, one_to(n), bl_local_system(n));
        CHECK(to_string(sys.eps({1, 2})) == "l2 * l3");
        if (n >= 3) CHECK(to_string(sys.eps({2, 3})) == "l3 * l4");
        // eps* vanishes off the diagonal
        for (const auto& j : sys.intervals())
            if (j.s < j.t) CHECK(equal(identical_on_domain(sys.eps_star(j), sys.eps_star(j) - sys.eps_star(j), m.domain, opts())));
        CHECK(failures(sys, m, 40) == 0);
    }
}

TEST_CASE("clauses") {
    const auto sys = bl_local_system(4);
    CHECK(eps_clause(sys, {2, 3}, 2) == EpsClause::scale);
    CHECK(eps_clause(sys, {2, 3}, 3) == EpsClause::invariant);
    CHECK(eps_clause(sys, {2, 3}, 4) == EpsClause::right_edge);
    CHECK(eps_clause(sys, {2, 3}, 1) == EpsClause::left_edge);
    CHECK(eps_star_clause(sys, {2, 3}, 3) == EpsClause::scale);
    CHECK(eps_star_clause(sys, {2, 3}, 2) == EpsClause::invariant);
    CHECK(eps_clause(sys, {2, 2}, 2) == EpsClause::scale);
    CHECK(eps_star_clause(sys, {2, 2}, 2) == EpsClause::scale);
    CHECK_THROWS_AS(eps_clause(sys, {1, 2}, 0), ModelError);
}

TEST_CASE("D5 local systems pass every table check") {
    const auto m = model_D5_affine(7);
    for (const auto& chain : {std::vector<int>{0, 2, 3, 4}, std::vector<int>{0, 2, 3, 5}}) {
        const auto sys = d5_local_system(m, chain);
        CHECK(structurally_equal(sys.eps({1, 1}), m.eps_of(0)));
        CHECK(failures(sys, m, 30) == 0);
    }
    CHECK_THROWS_AS(d5_local_system(m, {0, 1}), ModelError);
}

TEST_CASE("a corrupted table fails the checks") {
    const auto m = model_D5_affine(7);
    auto sys = d5_local_system(m, {0, 2, 3, 4});
    sys.set_eps_star({3, 4}, parse_expr("lb3*lb4*l4"));
    CHECK(check_partition_relation(sys, m, {3, 4}, opts()).outcome == Outcome::counterexample);
    CHECK(check_alternating_identities(sys, m, {3, 4}, opts()).outcome == Outcome::counterexample);
    auto moved = d5_local_system(m, {0, 2, 3, 4});
    moved.set_eps({2, 3}, parse_expr("l2*l3*(l4/lb4 + 1)"));
    CHECK(check_epsilon_axiom(moved, m, {2, 3}, 2, opts()).outcome == Outcome::counterexample);
}

TEST_CASE("local_epsilon rejects non type A chains and mismatched singletons") {
    const auto m = model_A_affine(3, 2);
    CHECK_THROWS_AS(local_epsilon(m, {0, 1, 2, 3}, EpsilonSystem({0, 1, 2, 3})), ModelError);
    EpsilonSystem t({1, 2});
    t.set_eps({1, 1}, var("l1"));
    t.set_eps({2, 2}, var("l3"));
    t.set_eps({1, 2}, var("l2") * var("l3"));
    CHECK_THROWS_AS(local_epsilon(m, {1, 2}, t), ModelError);
}

TEST_CASE("Borel system") {
    for (int n = 2; n <= 3; ++n) {
        const auto m = model_Borel(n);
        const auto sys = borel_epsilon_system(n);
        if (n == 2) CHECK(to_string(sys.eps_star({1, 2})) == "u1 * u2 - u1_2");
        CHECK(failures(sys, m, 30) == 0);
    }
}

TEST_CASE("product system reduces to the product formulas") {
    const auto x = model_A_affine(3, 2, "l");
    const auto y = model_A_affine(3, 5, "m");
    const auto ex = bl_local_system(3, "l");
    const auto ey = bl_local_system(3, "m");
    const auto z = product(x, y);
    const auto ez = product_epsilon(ex, ey, x);
    for (int i = 1; i <= 3; ++i)
        CHECK(equal(identical_on_domain(ez.eps({i, i}), z.eps_of(i), z.domain, opts())));
    // eps_123(x,y) as four terms
    const Expr want = parse_expr(
        "l2.x*l3.x*l4.x + m2.y*l3.x*l4.x/(l1.x/l2.x) + m2.y*m3.y*l4.x/((l1.x/l2.x)*(l2.x/l3.x))"
        " + m2.y*m3.y*m4.y/((l1.x/l2.x)*(l2.x/l3.x)*(l3.x/l4.x))");
    CHECK(equal(identical_on_domain(ez.eps({1, 3}), want, z.domain, opts())));
    for (int i = 1; i <= 2; ++i)
        CHECK(equal(identical_on_domain(ez.eps_star({i, i + 1}),
                                        var("l" + std::to_string(i + 2) + ".x") * var("m" + std::to_string(i + 2) + ".y"),
                                        z.domain, opts())));
    CHECK(failures(ez, z, 25) == 0);
    CHECK_THROWS_AS(product_epsilon(ex, bl_local_system(2, "m"), x), ModelError);
}

TEST_CASE("Borel x Borel product system passes the table checks") {
    const auto x = model_Borel(2);
    const auto z = product(x, x);
    const auto ez = product_epsilon(borel_epsilon_system(2), borel_epsilon_system(2), x);
    CHECK(failures(ez, z, 20) == 0);
}

TEST_CASE("json export") {
    const auto j = borel_epsilon_system(2).to_json();
    CHECK(j["chain"] == nlohmann::json::array({1, 2}));
    CHECK(j["entries"].size() == 3);
    CHECK(j["entries"][1]["eps"]["name"] == "u1_2");
}
