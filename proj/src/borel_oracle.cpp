#include "geocrystal/borel_oracle.hpp"

#include <utility>

#include "geocrystal/crystal.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/models.hpp"

namespace geocrystal {

namespace {

const std::string kC = "#c";

Assignment restrict_to(const Assignment& p, const std::vector<std::string>& vars) {
    Assignment out;
    for (const auto& v : vars) out.emplace(v, p.at(v));
    return out;
}

Assignment unrenamed(const Assignment& a, const std::string& suffix) {
    Assignment out;
    for (const auto& [k, v] : a)
        if (k.size() > suffix.size() && k.compare(k.size() - suffix.size(), suffix.size(), suffix) == 0)
            out.emplace(k.substr(0, k.size() - suffix.size()), v);
    return out;
}

RationalMatrix elementary(int size, int i, const Rational& z) {
    RationalMatrix m = RationalMatrix::Identity(size, size);
    m(i - 1, i) = z;
    return m;
}

}  // namespace

Rational determinant(const RationalMatrix& input) {
    if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    RationalMatrix m = input;
    const Eigen::Index k = m.rows();
    Rational det = 1;
    for (Eigen::Index col = 0; col < k; ++col) {
        Eigen::Index pivot = col;
        while (pivot < k && m(pivot, col).is_zero()) ++pivot;
        if (pivot == k) return 0;
        if (pivot != col) {
            m.row(pivot).swap(m.row(col));
            det = -det;
        }
        det *= m(col, col);
        for (Eigen::Index r = col + 1; r < k; ++r) {
            if (m(r, col).is_zero()) continue;
            const Rational f = m(r, col) / m(col, col);
            for (Eigen::Index c = col; c < k; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

RationalMatrix borel_minor(const BorelElement& x, int s, int t) {
    const RationalMatrix u = x.unipotent();
    return u.block(s, s - 1, t - s + 1, t - s + 1);
}

BorelElement borel_action_numeric(const BorelElement& x, int i, const Rational& c) {
    const int size = x.n() + 1;
    const Rational ui = x.u(i, i);
    const Rational phi = ui * x.t(i) / x.t(i + 1);
    const RationalMatrix left = elementary(size, i, (c - 1) / ui);
    const RationalMatrix right = elementary(size, i, (c.inverse() - 1) / phi);
    const RationalMatrix lx = left.lazyProduct(x.matrix());
    return BorelElement(lx.lazyProduct(right));
}

Verdict check_borel_action_matrix(int n, int i, const TestOptions& opts) {
    const CrystalModel m = model_Borel(n);
    return test_identity(with_parameters(m.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        const Assignment x = restrict_to(p, m.variables);
        const Assignment sym = apply_e(m, i, c, x);
        const Assignment num = borel_action_numeric(BorelElement::from_coordinates(n, x), i, c).coordinates();
        Sides s;
        for (const auto& v : m.variables) s.push(sym.at(v), num.at(v), v);
        return s;
    });
}

Verdict check_borel_action_display(int n, int i, const TestOptions& opts) {
    const CrystalModel m = model_Borel(n);
    return test_identity(with_parameters(m.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        const Assignment x = restrict_to(p, m.variables);
        const BorelElement before = BorelElement::from_coordinates(n, x);
        const BorelElement after = BorelElement::from_coordinates(n, apply_e(m, i, c, x));
        const Rational ui = before.u(i, i);
        Sides s;
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) {
                Rational want = before.u(a, b);
                if (b == i - 1)
                    want = before.u(a, i - 1) + (c - 1) * before.u(a, i) / ui;
                else if (a == i)
                    want = before.u(i, b) / c;
                else if (a == i + 1)
                    want = c * (before.u(i + 1, b) + (c.inverse() - 1) * before.u(i, b) / ui);
                s.push(after.u(a, b), want, borel_u(a, b));
            }
        return s;
    });
}

Verdict check_borel_minor(int n, Interval j, const TestOptions& opts) {
    const CrystalModel m = model_Borel(n);
    const EpsilonSystem sys = borel_epsilon_system(n);
    return test_identity(m.domain, opts, [&](const Assignment& x) {
        Sides s;
        s.push(evaluate(sys.eps_star(j), x), determinant(borel_minor(BorelElement::from_coordinates(n, x), j.s, j.t)),
               "det");
        return s;
    });
}

Verdict check_borel_product_epsilon(int n, Interval j, const TestOptions& opts) {
    const CrystalModel m = model_Borel(n);
    const EpsilonSystem sys = borel_epsilon_system(n);
    const EpsilonSystem prod = product_epsilon(sys, sys, m);
    const CrystalModel z = product(m, m);
    return test_identity(z.domain, opts, [&](const Assignment& p) {
        const BorelElement x = BorelElement::from_coordinates(n, unrenamed(p, ".x"));
        const BorelElement y = BorelElement::from_coordinates(n, unrenamed(p, ".y"));
        const BorelElement xy = borel_multiply(x, y);
        Evaluator ev(p);
        Sides s;
        s.push(ev(prod.eps(j)), xy.u(j.s, j.t), "eps");
        s.push(ev(prod.eps_star(j)), determinant(borel_minor(xy, j.s, j.t)), "eps*");
        return s;
    });
}

Verdict check_borel_product_action(int n, int i, const TestOptions& opts) {
    const CrystalModel m = model_Borel(n);
    const CrystalModel z = product(m, m);
    return test_identity(with_parameters(z.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        const Assignment pair = restrict_to(p, z.variables);
        const Assignment moved = apply_e(z, i, c, pair);
        const BorelElement x = BorelElement::from_coordinates(n, unrenamed(pair, ".x"));
        const BorelElement y = BorelElement::from_coordinates(n, unrenamed(pair, ".y"));
        const BorelElement lhs = borel_multiply(BorelElement::from_coordinates(n, unrenamed(moved, ".x")),
                                                BorelElement::from_coordinates(n, unrenamed(moved, ".y")));
        const BorelElement rhs = borel_action_numeric(borel_multiply(x, y), i, c);
        Sides s;
        for (Eigen::Index r = 0; r <= n; ++r)
            for (Eigen::Index col = 0; col <= r; ++col) s.push(lhs.matrix()(r, col), rhs.matrix()(r, col));
        return s;
    });
}

Verdict check_borel_product_functions(int n, int i, const TestOptions& opts) {
    const CrystalModel m = model_Borel(n);
    const CrystalModel z = product(m, m);
    return test_identity(z.domain, opts, [&](const Assignment& p) {
        const Assignment xa = unrenamed(p, ".x"), ya = unrenamed(p, ".y");
        const BorelElement xy = borel_multiply(BorelElement::from_coordinates(n, xa), BorelElement::from_coordinates(n, ya));
        const Assignment xyc = xy.coordinates();
        Sides s;
        s.push(eval_eps(m, i, xyc), eval_eps(m, i, xa) + eval_eps(m, i, ya) / eval_gamma(m, i, xa), "eps");
        s.push(eval_gamma(m, i, xyc), eval_gamma(m, i, xa) * eval_gamma(m, i, ya), "gamma");
        s.push(eval_eps(z, i, p), eval_eps(m, i, xyc), "eps-product-model");
        return s;
    });
}

}  // namespace geocrystal
