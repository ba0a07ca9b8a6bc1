#include "geocrystal/tropical_r.hpp"

#include <array>
#include <optional>
#include <tuple>
#include <stdexcept>

#include "geocrystal/error.hpp"
#include "geocrystal/models.hpp"

namespace geocrystal {

namespace {

int wrap(int k, int n) {
    const int m = n + 1;
    return ((k - 1) % m + m) % m + 1;
}

std::string at(const std::string& prefix, int k, int n) { return prefix + std::to_string(wrap(k, n)); }

const std::string kC = "#c";

Assignment pack(const Point& l, const Point& m) {
    Assignment a;
    for (std::size_t k = 0; k < l.size(); ++k) {
        a.emplace(left_name("l" + std::to_string(k + 1)), l[k]);
        a.emplace(right_name("m" + std::to_string(k + 1)), m[k]);
    }
    return a;
}

std::pair<Point, Point> unpack(int n, const Assignment& a) {
    Point l, m;
    for (int k = 1; k <= n + 1; ++k) {
        l.push_back(a.at(left_name("l" + std::to_string(k))));
        m.push_back(a.at(right_name("m" + std::to_string(k))));
    }
    return {l, m};
}

SampleSpec level_set(const std::string& prefix, int n, const Rational& level) {
    SampleSpec s;
    for (int k = 1; k <= n + 1; ++k) s.variables.push_back(prefix + std::to_string(k));
    s.constraints = {{s.variables, level}};
    return s;
}

Point read(const std::string& prefix, int n, const Assignment& a) {
    Point p;
    for (int k = 1; k <= n + 1; ++k) p.push_back(a.at(prefix + std::to_string(k)));
    return p;
}

Point shift(const Point& p) {
    Point out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) out[k] = p[(k + 1) % p.size()];
    return out;
}

void push_point(Sides& s, const Point& lhs, const Point& rhs, const std::string& label) {
    for (std::size_t k = 0; k < lhs.size(); ++k) s.push(lhs[k], rhs[k], label + std::to_string(k + 1));
}

void require_levels(int n, std::initializer_list<Rational> levels) {
    if (n < 1) throw ModelError("tropical R needs n >= 1");
    for (const auto& v : levels)
        if (v.sign() <= 0) throw ModelError("tropical R needs positive levels");
}

std::optional<Rational> exact_root(const Rational& v, unsigned long k) {
    if (v.sign() <= 0) return std::nullopt;
    mpz_class num, den;
    if (!mpz_root(num.get_mpz_t(), v.numerator().get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(den.get_mpz_t(), v.denominator().get_mpz_t(), k)) return std::nullopt;
    return Rational(num, den);
}

}  // namespace

Expr r_map_p(int n, int i, const std::string& l, const std::string& m) {
    std::vector<Expr> terms;
    for (int k = 1; k <= n + 1; ++k) {
        std::vector<Expr> f;
        for (int j = k; j <= n + 1; ++j) f.push_back(var(at(l, i + j, n)));
        for (int j = 1; j <= k; ++j) f.push_back(var(at(m, i + j, n)));
        terms.push_back(product_of(f));
    }
    return sum_of(terms);
}

RMapExprs r_map_exprs(int n) {
    require_levels(n, {});
    RMapExprs r;
    r.n = n;
    for (int k = 1; k <= n + 1; ++k) r.p.push_back(r_map_p(n, k));
    auto p = [&](int k) { return r.p[static_cast<std::size_t>(wrap(k, n) - 1)]; };
    for (int k = 1; k <= n + 1; ++k) {
        r.l_out.push_back(var(at("m", k, n)) * p(k) / p(k - 1));
        r.m_out.push_back(var(at("l", k, n)) * p(k - 1) / p(k));
    }
    return r;
}

std::pair<Point, Point> apply_R(const Point& l, const Point& m) {
    if (l.size() != m.size() || l.size() < 2) throw std::invalid_argument("apply_R: points need equal length >= 2");
    const int size = static_cast<int>(l.size());
    auto idx = [&](int k) { return static_cast<std::size_t>(((k - 1) % size + size) % size); };
    std::vector<Rational> p(static_cast<std::size_t>(size));
    for (int i = 1; i <= size; ++i) {
        Rational total = 0;
        for (int k = 1; k <= size; ++k) {
            Rational term = 1;
            for (int j = k; j <= size; ++j) term *= l[idx(i + j)];
            for (int j = 1; j <= k; ++j) term *= m[idx(i + j)];
            total += term;
        }
        p[idx(i)] = total;
    }
    Point lo(l.size()), mo(l.size());
    for (int k = 1; k <= size; ++k) {
        lo[idx(k)] = m[idx(k)] * p[idx(k)] / p[idx(k - 1)];
        mo[idx(k)] = l[idx(k)] * p[idx(k - 1)] / p[idx(k)];
    }
    return {lo, mo};
}

CrystalModel r_source(int n, const Rational& L, const Rational& M) {
    return product(model_A_affine(n, L, "l"), model_A_affine(n, M, "m"));
}

CrystalModel r_target(int n, const Rational& L, const Rational& M) {
    return product(model_A_affine(n, M, "l"), model_A_affine(n, L, "m"));
}

Assignment apply_R(int n, const Assignment& lm) {
    const auto [l, m] = unpack(n, lm);
    const auto [lo, mo] = apply_R(l, m);
    return pack(lo, mo);
}

Verdict check_r1(int n, const Rational& L, const Rational& M, int i, const TestOptions& opts) {
    require_levels(n, {L, M});
    const CrystalModel src = r_source(n, L, M), dst = r_target(n, L, M);
    return test_identity(with_parameters(src.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        Assignment x = p;
        x.erase(kC);
        const auto lhs = unpack(n, apply_e(dst, i, c, apply_R(n, x)));
        const auto rhs = unpack(n, apply_R(n, apply_e(src, i, c, x)));
        Sides s;
        push_point(s, lhs.first, rhs.first, "l'");
        push_point(s, lhs.second, rhs.second, "m'");
        return s;
    });
}

Verdict check_r2(int n, const Rational& L, const Rational& M, int i, const TestOptions& opts) {
    require_levels(n, {L, M});
    const CrystalModel src = r_source(n, L, M), dst = r_target(n, L, M);
    return test_identity(src.domain, opts, [&](const Assignment& x) {
        Sides s;
        s.push(eval_eps(dst, i, apply_R(n, x)), eval_eps(src, i, x), "eps");
        return s;
    });
}

Verdict check_r3(int n, const Rational& L, const Rational& M, int i, const TestOptions& opts) {
    require_levels(n, {L, M});
    const CrystalModel src = r_source(n, L, M), dst = r_target(n, L, M);
    return test_identity(src.domain, opts, [&](const Assignment& x) {
        Sides s;
        s.push(eval_gamma(dst, i, apply_R(n, x)), eval_gamma(src, i, x), "gamma");
        return s;
    });
}

Verdict check_yang_baxter(int n, const Rational& L, const Rational& M, const Rational& N, const TestOptions& opts) {
    require_levels(n, {L, M, N});
    const SampleSpec spec = merge(merge(level_set("u", n, L), level_set("v", n, M)), level_set("w", n, N));
    return test_identity(spec, opts, [&](const Assignment& p) {
        using Triple = std::array<Point, 3>;
        auto r12 = [](Triple t) {
            std::tie(t[0], t[1]) = apply_R(t[0], t[1]);
            return t;
        };
        auto r23 = [](Triple t) {
            std::tie(t[1], t[2]) = apply_R(t[1], t[2]);
            return t;
        };
        const Triple start{read("u", n, p), read("v", n, p), read("w", n, p)};
        const Triple lhs = r12(r23(r12(start)));
        const Triple rhs = r23(r12(r23(start)));
        Sides s;
        for (std::size_t f = 0; f < 3; ++f) push_point(s, lhs[f], rhs[f], "factor" + std::to_string(f + 1) + ".");
        return s;
    });
}

Verdict check_level_swap(int n, const Rational& L, const Rational& M, const TestOptions& opts) {
    require_levels(n, {L, M});
    return test_identity(r_source(n, L, M).domain, opts, [&](const Assignment& x) {
        const auto [lo, mo] = unpack(n, apply_R(n, x));
        Rational pl = 1, pm = 1;
        for (const auto& v : lo) pl *= v;
        for (const auto& v : mo) pm *= v;
        Sides s;
        s.push(pl, M, "prod l'");
        s.push(pm, L, "prod m'");
        return s;
    });
}

Verdict check_cyclic_symmetry(int n, const Rational& L, const Rational& M, const TestOptions& opts) {
    require_levels(n, {L, M});
    return test_identity(r_source(n, L, M).domain, opts, [&](const Assignment& x) {
        const auto [l, m] = unpack(n, x);
        const auto [lo, mo] = apply_R(l, m);
        const auto [ls, ms] = apply_R(shift(l), shift(m));
        Sides s;
        push_point(s, ls, shift(lo), "l'");
        push_point(s, ms, shift(mo), "m'");
        return s;
    });
}

Verdict check_diagonal_identity(int n, const Rational& L, const TestOptions& opts) {
    require_levels(n, {L});
    return test_identity(level_set("l", n, L), opts, [&](const Assignment& x) {
        const Point l = read("l", n, x);
        const auto [lo, mo] = apply_R(l, l);
        Sides s;
        push_point(s, lo, l, "l'");
        push_point(s, mo, l, "m'");
        return s;
    });
}

EpsilonSystem r_product_system(int n, const Rational& L) {
    return product_epsilon(bl_local_system(n, "l"), bl_local_system(n, "m"), model_A_affine(n, L, "l"));
}

Verdict check_epsilon_invariance(int n, const Rational& L, const Rational& M, Interval j, const TestOptions& opts) {
    require_levels(n, {L, M});
    if (j.empty() || j.s < 1 || j.t > n) throw std::invalid_argument("interval outside 1..n");
    // gamma expressions do not depend on the level, so one system serves both sides
    const EpsilonSystem sys = r_product_system(n, L);
    const Expr& e = sys.eps(j);
    const Expr& es = sys.eps_star(j);
    return test_identity(r_source(n, L, M).domain, opts, [&](const Assignment& x) {
        const Assignment y = apply_R(n, x);
        Evaluator ex(x), ey(y);
        Sides s;
        s.push(ey(e), ex(e), "eps");
        s.push(ey(es), ex(es), "eps*");
        return s;
    });
}

UniquenessReport uniqueness_probe(int n, const Rational& a, const Rational& b, std::size_t perturbations,
                                  std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("uniqueness probe needs n >= 1");
    if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("uniqueness probe needs a, b > 0");
    UniquenessReport rep;
    rep.n = n;
    rep.a = a;
    rep.b = b;
    const Rational L = a.pow(n + 1), M = b.pow(n + 1);
    const CrystalModel src = r_source(n, L, M), dst = r_target(n, L, M);
    const EpsilonSystem sys = r_product_system(n, L);
    const std::size_t size = static_cast<std::size_t>(n + 1);
    const Point l0(size, a), m0(size, b);
    const Assignment base = pack(l0, m0);

    // eps_i = eps_i(l0, m0), gamma_i = 1, eps*_[i,i+1] = eps*_[i,i+1](l0, m0)
    auto satisfies = [&](const Point& lp, const Point& mp) {
        const Assignment at = pack(lp, mp);
        for (int i = 0; i <= n; ++i) {
            if (eval_eps(dst, i, at) != eval_eps(src, i, base)) return false;
            if (eval_gamma(dst, i, at) != 1) return false;
        }
        for (int i = 1; i < n; ++i)
            if (evaluate(sys.eps_star({i, i + 1}), at) != evaluate(sys.eps_star({i, i + 1}), base)) return false;
        return true;
    };

    rep.fixed_point_holds = satisfies(m0, l0) && apply_R(l0, m0) == std::pair<Point, Point>{m0, l0};
    rep.steps.push_back("gamma_i(l',m') = 1 for all i gives l'_k m'_k = P independent of k");

    if (n >= 2) {
        rep.p = evaluate(sys.eps_star({1, 2}), base);
        rep.steps.push_back("eps*_[i,i+1](l',m') = l'_{i+2} m'_{i+2} fixes P = " + rep.p.str());
    } else {
        const auto root = exact_root(L * M, static_cast<unsigned long>(n + 1));
        if (!root) throw std::logic_error("L M has no rational root");
        rep.p = *root;
        rep.steps.push_back("P^" + std::to_string(n + 1) + " = L M with P > 0 fixes P = " + rep.p.str());
    }

    const Rational sum = eval_eps(src, 1, base);
    rep.steps.push_back("eps_i(l',m') = l'_{i+1} + P / l'_i = " + sum.str());
    // l'_k = q_k / q_{k-1}, q_{k+1} = sum q_k - P q_{k-1}, q_0 = 1, q_1 = z
    Rational alpha_prev = 1, beta_prev = 0, alpha = 0, beta = 1;
    for (std::size_t k = 1; k < size; ++k) {
        const Rational an = sum * alpha - rep.p * alpha_prev, bn = sum * beta - rep.p * beta_prev;
        alpha_prev = alpha;
        beta_prev = beta;
        alpha = an;
        beta = bn;
    }
    rep.beta = beta;
    rep.steps.push_back("q_{k+1} = " + sum.str() + " q_k - " + rep.p.str() + " q_{k-1}, q_0 = 1, q_1 = z");
    if (beta.is_zero()) {
        rep.steps.push_back("q_" + std::to_string(n + 1) + " does not depend on z; elimination fails");
        return rep;
    }
    const Rational z = (M - alpha) / beta;
    rep.steps.push_back("q_" + std::to_string(n + 1) + " = " + alpha.str() + " + " + beta.str() + " z = " + M.str() +
                        " forces z = " + z.str());

    Rational q_prev = 1, q = z;
    for (std::size_t k = 1; k <= size; ++k) {
        rep.l_solution.push_back(q / q_prev);
        const Rational next = sum * q - rep.p * q_prev;
        q_prev = q;
        q = next;
    }
    for (const auto& v : rep.l_solution) rep.m_solution.push_back(rep.p / v);
    rep.forced = rep.l_solution == m0 && rep.m_solution == l0 && satisfies(rep.l_solution, rep.m_solution);
    rep.steps.push_back(rep.forced ? "solution is (m0, l0)" : "elimination did not return (m0, l0)");

    Rng rng(seed);
    while (rep.perturbations < perturbations) {
        Rational delta = sample_scalar(rng, 1000, false);
        if ((b + delta).sign() <= 0) continue;
        Point lp = m0;
        lp[0] = b + delta;
        lp[size - 1] = b * b / lp[0];  // keeps prod l' = M
        ++rep.perturbations;
        if (!satisfies(lp, l0)) ++rep.perturbations_rejected;
    }
    rep.assumption =
        "uniqueness of R among all tropical R maps also needs the product B_L x B_M to be prehomogeneous; "
        "that is assumed here, not checked";
    return rep;
}

}  // namespace geocrystal
