#include <doctest.h>

#include "geocrystal/crystal.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/models.hpp"
#include "geocrystal/tropical_r.hpp"

using namespace geocrystal;

namespace {

TestOptions trials(std::size_t k) {
    TestOptions o;
    o.trials = k;
    return o;
}

Rational q(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST_CASE("R on a hand-computed n=1 point") {
    // P_1 = 12 + 6, P_2 = 8 + 24
    const auto [lo, mo] = apply_R({q(1), q(4)}, {q(2), q(3)});
    CHECK(lo == Point{q(9, 8), q(16, 3)});
    CHECK(mo == Point{q(16, 9), q(9, 4)});
    CHECK(lo[0] * lo[1] == 6);
    CHECK(mo[0] * mo[1] == 4);

    const RMapExprs r = r_map_exprs(1);
    const Assignment pt{{"l1", q(1)}, {"l2", q(4)}, {"m1", q(2)}, {"m2", q(3)}};
    CHECK(evaluate(r.p[0], pt) == 18);
    CHECK(evaluate(r.p[1], pt) == 32);
    CHECK(evaluate(r.l_out[1], pt) == q(16, 3));
    CHECK(evaluate(r.m_out[0], pt) == q(16, 9));

    const EpsilonSystem sys = r_product_system(1, 4);
    const Assignment x{{"l1.x", q(1)}, {"l2.x", q(4)}, {"m1.y", q(2)}, {"m2.y", q(3)}};
    const Assignment y = apply_R(1, x);
    CHECK(evaluate(sys.eps({1, 1}), y) == evaluate(sys.eps({1, 1}), x));
    CHECK(evaluate(sys.eps_star({1, 1}), y) == evaluate(sys.eps_star({1, 1}), x));
}

TEST_CASE("expression form of R agrees with direct evaluation") {
    for (int n = 1; n <= 4; ++n) {
        const RMapExprs r = r_map_exprs(n);
        CHECK(certify_subtraction_free(r.p[0]).free);
        Rng rng(40 + static_cast<std::uint64_t>(n));
        for (int rep = 0; rep < 10; ++rep) {
            Point l, m;
            Assignment pt;
            for (int k = 1; k <= n + 1; ++k) {
                l.push_back(sample_scalar(rng, 50, true));
                m.push_back(sample_scalar(rng, 50, true));
                pt.emplace("l" + std::to_string(k), l.back());
                pt.emplace("m" + std::to_string(k), m.back());
            }
            const auto [lo, mo] = apply_R(l, m);
            for (int k = 0; k <= n; ++k) {
                CHECK(evaluate(r.l_out[k], pt) == lo[k]);
                CHECK(evaluate(r.m_out[k], pt) == mo[k]);
            }
        }
    }
}

TEST_CASE("homogeneous points are swapped") {
    for (int n = 1; n <= 4; ++n) {
        const Point l0(n + 1, q(2)), m0(n + 1, q(5, 3));
        const auto out = apply_R(l0, m0);
        CHECK(out.first == m0);
        CHECK(out.second == l0);
    }
}

TEST_CASE("tropical R axioms r1-r3") {
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) {
            CAPTURE(n);
            CAPTURE(i);
            CHECK(check_r1(n, 8, 27, i, trials(30)).outcome == Outcome::equal);
            CHECK(check_r2(n, 8, 27, i, trials(30)).outcome == Outcome::equal);
            CHECK(check_r3(n, 8, 27, i, trials(30)).outcome == Outcome::equal);
        }
}

TEST_CASE("Yang-Baxter relation") {
    CHECK(check_yang_baxter(1, 4, 6, 9, trials(100)).outcome == Outcome::equal);
    CHECK(check_yang_baxter(2, 4, 6, 9, trials(30)).outcome == Outcome::equal);
    CHECK(check_yang_baxter(3, 2, 3, 5, trials(15)).outcome == Outcome::equal);
    CHECK(check_yang_baxter(2, 5, 7, 7, trials(20)).outcome == Outcome::equal);
    CHECK(check_yang_baxter(2, 8, 8, 8, trials(20)).outcome == Outcome::equal);
    const Point h(3, q(2));
    auto [a, b] = apply_R(h, h);
    CHECK(a == h);
    CHECK(b == h);
}

TEST_CASE("level swap, cyclic symmetry and the diagonal") {
    for (int n = 1; n <= 3; ++n) {
        CHECK(check_level_swap(n, 4, 6, trials(50)).outcome == Outcome::equal);
        CHECK(check_cyclic_symmetry(n, 4, 6, trials(30)).outcome == Outcome::equal);
        CHECK(check_diagonal_identity(n, 5, trials(20)).outcome == Outcome::equal);
    }
}

TEST_CASE("swapping the factors is not a tropical R map") {
    const CrystalModel src = r_source(2, 4, 6), dst = r_target(2, 4, 6);
    const Verdict v = test_identity(src.domain, trials(20), [&](const Assignment& x) {
        Assignment swapped;
        for (int k = 1; k <= 3; ++k) {
            swapped.emplace("l" + std::to_string(k) + ".x", x.at("m" + std::to_string(k) + ".y"));
            swapped.emplace("m" + std::to_string(k) + ".y", x.at("l" + std::to_string(k) + ".x"));
        }
        Sides s;
        s.push(eval_eps(dst, 1, swapped), eval_eps(src, 1, x));
        return s;
    });
    CHECK(v.outcome == Outcome::counterexample);
}

TEST_CASE("epsilon systems are invariant under R") {
    for (int n = 1; n <= 3; ++n)
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) {
                CAPTURE(n);
                CAPTURE(s);
                CAPTURE(t);
                CHECK(check_epsilon_invariance(n, 4, 6, {s, t}, trials(n == 3 && t - s == 2 ? 100 : 25)).outcome ==
                      Outcome::equal);
            }
    // singleton intervals reproduce the crystal eps
    const EpsilonSystem sys = r_product_system(3, 4);
    const CrystalModel src = r_source(3, 4, 6);
    for (int i = 1; i <= 3; ++i)
        CHECK(identical_on_domain(sys.eps({i, i}), src.eps_of(i), src.domain, trials(10)).outcome == Outcome::equal);
    // eps*_[i,i+1] collapses to l_{i+2} m_{i+2}
    for (int i = 1; i <= 2; ++i) {
        const Expr want = var("l" + std::to_string(i + 2) + ".x") * var("m" + std::to_string(i + 2) + ".y");
        CHECK(identical_on_domain(sys.eps_star({i, i + 1}), want, src.domain, trials(20)).outcome == Outcome::equal);
    }
}

TEST_CASE("uniqueness probe") {
    const UniquenessReport r = uniqueness_probe(2, 2, 3);
    CHECK(r.fixed_point_holds);
    CHECK(r.forced);
    CHECK(r.p == 6);
    CHECK(r.l_solution == Point{3, 3, 3});
    CHECK(r.m_solution == Point{2, 2, 2});
    CHECK(r.perturbations == 50);
    CHECK(r.perturbations_rejected == 50);
    CHECK(!r.assumption.empty());
    CHECK(r.passed());

    const UniquenessReport same = uniqueness_probe(3, q(3, 2), q(3, 2));
    CHECK(same.passed());
    CHECK(same.l_solution == Point(4, q(3, 2)));

    const UniquenessReport one = uniqueness_probe(1, 2, 5);
    CHECK(one.passed());
    CHECK(one.p == 10);
    CHECK(one.beta == 7);  // (a^2 - b^2) / (a - b)

    CHECK_THROWS_AS(uniqueness_probe(2, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(uniqueness_probe(2, 2, -1), std::invalid_argument);
}
