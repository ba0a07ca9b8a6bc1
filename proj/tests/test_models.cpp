#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "geocrystal/borel_oracle.hpp"
#include "geocrystal/crystal.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/models.hpp"

using namespace geocrystal;

namespace {

Rational leibniz(const RationalMatrix& m) {
    std::vector<int> perm(static_cast<std::size_t>(m.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < perm.size(); ++a)
            for (std::size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b]) ++inversions;
        Rational term = inversions % 2 ? -1 : 1;
        for (std::size_t r = 0; r < perm.size(); ++r) term *= m(static_cast<Eigen::Index>(r), perm[r]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

BorelElement random_element(int n, std::uint64_t seed) {
    Rng rng(seed);
    return BorelElement::from_coordinates(n, sample_point(model_Borel(n).domain, rng));
}

TestOptions quick(std::size_t trials = 40) {
    TestOptions o;
    o.trials = trials;
    return o;
}

}  // namespace

TEST_CASE("exact determinant agrees with the permutation expansion") {
    Rng rng(5);
    for (int size = 1; size <= 5; ++size)
        for (int rep = 0; rep < 10; ++rep) {
            RationalMatrix m(size, size);
            for (int r = 0; r < size; ++r)
                for (int c = 0; c < size; ++c) m(r, c) = Rational(rng.uniform(-3, 3), rng.uniform(1, 4));
            CHECK(determinant(m) == leibniz(m));
        }
    RationalMatrix sing(2, 2);
    sing << Rational(1), Rational(2), Rational(2), Rational(4);
    CHECK(determinant(sing).is_zero());
}

TEST_CASE("Borel element validation and coordinates") {
    RationalMatrix upper = RationalMatrix::Identity(2, 2);
    upper(0, 1) = 1;
    CHECK_THROWS_AS(BorelElement{upper}, std::invalid_argument);
    RationalMatrix scaled = RationalMatrix::Identity(2, 2);
    scaled(0, 0) = 2;
    CHECK_THROWS_AS(BorelElement{scaled}, std::invalid_argument);

    for (int n = 1; n <= 4; ++n) {
        const BorelElement x = random_element(n, 10 + n);
        CHECK(BorelElement::from_coordinates(n, x.coordinates()).matrix() == x.matrix());
        CHECK(BorelElement::from_json(x.to_json()).matrix() == x.matrix());
        CHECK(borel_multiply(BorelElement::identity(n), x).matrix() == x.matrix());
        CHECK(borel_multiply(x, BorelElement::identity(n)).matrix() == x.matrix());
        const BorelElement y = random_element(n, 20 + n);
        const BorelElement xy = borel_multiply(x, y);
        for (int k = 1; k <= n + 1; ++k) CHECK(xy.t(k) == x.t(k) * y.t(k));
        // subdiagonal of the unipotent part is additive up to torus conjugation
        for (int s = 1; s <= n; ++s) CHECK(xy.u(s, s) == x.u(s, s) + y.u(s, s) * x.t(s + 1) / x.t(s));
    }
}

TEST_CASE("Borel model satisfies the crystal axioms") {
    for (int n = 1; n <= 4; ++n) {
        const CrystalModel m = model_Borel(n);
        CAPTURE(n);
        CHECK_NOTHROW(m.validate());
        for (int i = 1; i <= n; ++i) {
            CHECK(check_group_law(m, i, quick()).passed());
            CHECK(check_identity_at_one(m, i, quick()).passed());
            for (int j = 1; j <= n; ++j) {
                CHECK(check_axiom_ii(m, i, j, quick()).passed());
                CHECK(check_axiom_iv(m, i, j, quick()).passed());
                if (i < j) CHECK(check_verma(m, i, j, quick(20)).outcome == Outcome::equal);
            }
        }
    }
}

TEST_CASE("Borel action matches matrix multiplication") {
    for (int n = 1; n <= 4; ++n)
        for (int i = 1; i <= n; ++i) {
            CAPTURE(n);
            CAPTURE(i);
            CHECK(check_borel_action_matrix(n, i, quick()).outcome == Outcome::equal);
            CHECK(check_borel_action_display(n, i, quick()).outcome == Outcome::equal);
        }
}

TEST_CASE("Borel eps* is the minor determinant") {
    for (int n = 1; n <= 4; ++n)
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) {
                CAPTURE(n);
                CHECK(check_borel_minor(n, {s, t}, quick(20)).outcome == Outcome::equal);
            }
    const BorelElement x = random_element(3, 99);
    const EpsilonSystem sys = borel_epsilon_system(3);
    CHECK(evaluate(sys.eps_star({1, 3}), x.coordinates()) == leibniz(borel_minor(x, 1, 3)));
    CHECK(evaluate(sys.eps({2, 3}), x.coordinates()) == x.u(2, 3));
}

TEST_CASE("Borel product crystal is matrix multiplication") {
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        for (int i = 1; i <= n; ++i) {
            CHECK(check_borel_product_functions(n, i, quick()).outcome == Outcome::equal);
            CHECK(check_borel_product_action(n, i, quick()).outcome == Outcome::equal);
        }
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) CHECK(check_borel_product_epsilon(n, {s, t}, quick(20)).outcome == Outcome::equal);
    }
}

TEST_CASE("a perturbed action is caught by the matrix oracle") {
    CrystalModel m = model_Borel(2);
    m.action.at(1)[0] = m.action.at(1)[0] + Expr::var(borel_u(2, 2));
    const Verdict v = test_identity(with_parameters(m.domain, {"#c"}), quick(), [&](const Assignment& p) {
        Assignment x = p;
        x.erase("#c");
        const Assignment sym = apply_e(m, 1, p.at("#c"), x);
        const Assignment num = borel_action_numeric(BorelElement::from_coordinates(2, x), 1, p.at("#c")).coordinates();
        Sides s;
        for (const auto& name : m.variables) s.push(sym.at(name), num.at(name), name);
        return s;
    });
    CHECK(v.outcome == Outcome::counterexample);
}
