#include "geocrystal/ud.hpp"

#include <array>
#include <set>
#include <stdexcept>
#include <tuple>

#include "geocrystal/error.hpp"
#include "geocrystal/models.hpp"
#include "geocrystal/tropical_r.hpp"

namespace geocrystal {

namespace {

const std::string kC = "#c";
const std::string kC2 = "#c2";

std::size_t wrap(int k, int size) { return static_cast<std::size_t>(((k - 1) % size + size) % size); }

TropExpr combine(Semiring s, TropExpr a, TropExpr b) {
    return s == Semiring::max_plus ? TropExpr::max(std::move(a), std::move(b)) : TropExpr::min(std::move(a), std::move(b));
}

std::int64_t combine(Semiring s, std::int64_t a, std::int64_t b) {
    return s == Semiring::max_plus ? std::max(a, b) : std::min(a, b);
}

std::vector<std::string> with(std::vector<std::string> vars, std::initializer_list<std::string> extra) {
    vars.insert(vars.end(), extra);
    return vars;
}

TropPoint only(const TropPoint& p, const std::vector<std::string>& vars) {
    TropPoint out;
    for (const auto& v : vars) out.emplace(v, p.at(v));
    return out;
}

std::vector<std::string> prefixed(const std::string& prefix, int n, const std::string& suffix = {}) {
    std::vector<std::string> out;
    for (int k = 1; k <= n + 1; ++k) out.push_back(prefix + std::to_string(k) + suffix);
    return out;
}

IntPoint read(const TropPoint& p, const std::vector<std::string>& names) {
    IntPoint out;
    for (const auto& v : names) out.push_back(p.at(v));
    return out;
}

TropPoint pack(int n, const IntPoint& l, const IntPoint& m) {
    TropPoint p;
    for (int k = 1; k <= n + 1; ++k) {
        p.emplace(left_name("l" + std::to_string(k)), l[static_cast<std::size_t>(k - 1)]);
        p.emplace(right_name("m" + std::to_string(k)), m[static_cast<std::size_t>(k - 1)]);
    }
    return p;
}

TropPoint ud_R(int n, const TropPoint& p) {
    const auto [lo, mo] =
        combinatorial_R(read(p, prefixed("l", n, ".x")), read(p, prefixed("m", n, ".y")));
    return pack(n, lo, mo);
}

void push_point(Sides& s, const IntPoint& a, const IntPoint& b, const std::string& label) {
    for (std::size_t k = 0; k < a.size(); ++k) s.push(a[k], b[k], label + std::to_string(k + 1));
}

void push_point(Sides& s, const TropPoint& a, const TropPoint& b) {
    for (const auto& [k, v] : a) s.push(v, b.at(k), k);
}

// Levels only enter through constraints, which the tropical checks ignore.
const Rational kAnyLevel = 1;

}  // namespace

TropModel ud_model(const CrystalModel& model, Semiring semiring) {
    TropModel t;
    t.name = "UD " + model.name;
    t.variables = model.variables;
    t.cartan = model.cartan;
    t.semiring = semiring;
    auto trop = [&](const Expr& e, const std::string& where) {
        std::vector<std::string> w;
        TropExpr out = tropicalize(e, semiring, &w);
        for (auto& msg : w) t.warnings.push_back(where + ": " + msg);
        return out;
    };
    for (const auto& [i, g] : model.gamma) t.gamma.emplace(i, trop(g, "gamma_" + std::to_string(i)));
    for (const auto& [i, e] : model.eps) t.eps.emplace(i, trop(e, "eps_" + std::to_string(i)));
    for (const auto& [i, act] : model.action) {
        std::vector<TropExpr> out;
        for (std::size_t k = 0; k < act.size(); ++k)
            out.push_back(trop(act[k], "e_" + std::to_string(i) + "[" + model.variables[k] + "]"));
        t.action.emplace(i, std::move(out));
    }
    return t;
}

TropPoint ud_apply_e(const TropModel& model, int i, std::int64_t c, const TropPoint& x) {
    TropPoint at = only(x, model.variables);
    at[kActionParameter] = c;
    TropEvaluator ev(at);
    const auto& act = model.action.at(i);
    TropPoint out;
    for (std::size_t k = 0; k < act.size(); ++k) out.emplace(model.variables[k], ev(act[k]));
    return out;
}

IntPoint ud_crystal_operator(int n, int i, std::int64_t c, const IntPoint& l) {
    if (static_cast<int>(l.size()) != n + 1) throw std::invalid_argument("point must have n+1 coordinates");
    if (i < 0 || i > n) throw ModelError("label out of range");
    IntPoint out = l;
    const int size = n + 1;
    out[wrap(i, size)] += c;
    out[wrap(i + 1, size)] -= c;
    return out;
}

std::pair<TropExpr, TropExpr> ud_tensor_coeffs(const CrystalModel& x, const CrystalModel& y, int i,
                                               Semiring semiring) {
    auto left = [](const std::string& v) { return left_name(v); };
    auto right = [](const std::string& v) { return right_name(v); };
    const TropExpr phi = tropicalize(rename(x.eps_of(i) * x.gamma_of(i), left), semiring);
    const TropExpr e = tropicalize(rename(y.eps_of(i), right), semiring);
    const TropExpr c = TropExpr::var(kActionParameter);
    const TropExpr c1 = combine(semiring, c + phi, e) - combine(semiring, phi, e);
    return {c1, c - c1};
}

std::pair<IntPoint, IntPoint> combinatorial_R(const IntPoint& l, const IntPoint& m, Semiring semiring) {
    if (l.size() != m.size() || l.size() < 2) throw std::invalid_argument("points need equal length >= 2");
    const int size = static_cast<int>(l.size());
    IntPoint p(l.size());
    for (int i = 1; i <= size; ++i) {
        std::int64_t best = 0;
        for (int k = 1; k <= size; ++k) {
            std::int64_t term = 0;
            for (int j = k; j <= size; ++j) term += l[wrap(i + j, size)];
            for (int j = 1; j <= k; ++j) term += m[wrap(i + j, size)];
            best = k == 1 ? term : combine(semiring, best, term);
        }
        p[wrap(i, size)] = best;
    }
    IntPoint lo(l.size()), mo(l.size());
    for (int k = 1; k <= size; ++k) {
        lo[wrap(k, size)] = m[wrap(k, size)] + p[wrap(k, size)] - p[wrap(k - 1, size)];
        mo[wrap(k, size)] = l[wrap(k, size)] + p[wrap(k - 1, size)] - p[wrap(k, size)];
    }
    return {lo, mo};
}

Verdict test_tropical(const std::vector<std::string>& variables, const TropBox& box, const TestOptions& opts,
                      const TropSideFunction& sides) {
    if (opts.trials < 1) throw std::invalid_argument("tropical test needs at least one sample");
    if (box.lo > box.hi) throw std::invalid_argument("empty sampling box");
    Rng rng(opts.seed);
    Verdict verdict;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        TropPoint p;
        for (const auto& v : variables) p[v] = rng.uniform(box.lo, box.hi);
        const Sides s = sides(p);
        for (std::size_t k = 0; k < s.lhs.size(); ++k)
            if (s.lhs[k] != s.rhs[k]) {
                Assignment point;
                for (const auto& [name, v] : p) point.emplace(name, Rational(static_cast<long>(v)));
                verdict.outcome = Outcome::counterexample;
                verdict.trials = trial + 1;
                verdict.witness = Counterexample{std::move(point), s.labels[k], s.lhs[k], s.rhs[k]};
                return verdict;
            }
    }
    verdict.trials = opts.trials;
    return verdict;
}

Verdict check_tropical_identity(const TropExpr& a, const TropExpr& b, const TropBox& box, const TestOptions& opts) {
    std::set<std::string> names;
    std::function<void(const TropExpr&)> collect = [&](const TropExpr& e) {
        if (e.op() == TropOp::Var) names.insert(e.name());
        else if (e.op() != TropOp::Const) {
            collect(e.lhs());
            collect(e.rhs());
        }
    };
    collect(a);
    collect(b);
    return test_tropical({names.begin(), names.end()}, box, opts, [&](const TropPoint& p) {
        Sides s;
        s.push(static_cast<long>(evaluate(a, p)), static_cast<long>(evaluate(b, p)));
        return s;
    });
}

Verdict check_ud_axiom_ii(const CrystalModel& model, int i, int j, const TropBox& box, const TestOptions& opts) {
    const TropModel t = ud_model(model);
    const long aij = model.cartan(i, j);
    return test_tropical(with(t.variables, {kC}), box, opts, [&](const TropPoint& p) {
        const std::int64_t c = p.at(kC);
        Sides s;
        s.push(static_cast<long>(evaluate(t.gamma.at(j), ud_apply_e(t, i, c, p))),
               static_cast<long>(evaluate(t.gamma.at(j), p) + aij * c), "gamma");
        return s;
    });
}

Verdict check_ud_axiom_iv(const CrystalModel& model, int i, int j, const TropBox& box, const TestOptions& opts) {
    if (i != j && !(model.cartan(i, j) == 0 && model.cartan(j, i) == 0))
        return Verdict::not_applicable("eps_i under e_j is only constrained for orthogonal i, j");
    const TropModel t = ud_model(model);
    return test_tropical(with(t.variables, {kC}), box, opts, [&](const TropPoint& p) {
        const std::int64_t c = p.at(kC);
        Sides s;
        s.push(static_cast<long>(evaluate(t.eps.at(i), ud_apply_e(t, j, c, p))),
               static_cast<long>(evaluate(t.eps.at(i), p) - (i == j ? c : 0)), "eps");
        return s;
    });
}

Verdict check_ud_operator(int n, int i, const TropBox& box, const TestOptions& opts) {
    const TropModel t = ud_model(model_A_affine(n, kAnyLevel));
    return test_tropical(with(t.variables, {kC, kC2}), box, opts, [&](const TropPoint& p) {
        const std::int64_t c = p.at(kC), c2 = p.at(kC2);
        const IntPoint direct = ud_crystal_operator(n, i, c, read(p, t.variables));
        Sides s;
        push_point(s, read(ud_apply_e(t, i, c, p), t.variables), direct, "l");
        push_point(s, ud_apply_e(t, i, c, ud_apply_e(t, i, c2, p)), ud_apply_e(t, i, c + c2, p));
        return s;
    });
}

Verdict check_ud_tensor_sum(int n, int i, const TropBox& box, const TestOptions& opts) {
    const CrystalModel x = model_A_affine(n, kAnyLevel, "l"), y = model_A_affine(n, kAnyLevel, "m");
    const auto [c1, c2] = ud_tensor_coeffs(x, y, i);
    const auto [r1, r2] = tensor_coefficients(x, y, i);
    const TropExpr t1 = tropicalize(r1), t2 = tropicalize(r2);
    return test_tropical(with(product(x, y).variables, {kActionParameter}), box, opts, [&](const TropPoint& p) {
        TropEvaluator ev(p);
        Sides s;
        s.push(static_cast<long>(ev(c1) + ev(c2)), static_cast<long>(p.at(kActionParameter)), "C1 + C2");
        s.push(static_cast<long>(ev(t1)), static_cast<long>(ev(c1)), "UD(c1)");
        s.push(static_cast<long>(ev(t2)), static_cast<long>(ev(c2)), "UD(c2)");
        return s;
    });
}

Verdict check_ud_tensor_dichotomy(int n, int i, std::int64_t c, const TropBox& box, const TestOptions& opts) {
    if (c != 1 && c != -1) throw std::invalid_argument("dichotomy is stated for C = 1 and C = -1");
    const CrystalModel x = model_A_affine(n, kAnyLevel, "l"), y = model_A_affine(n, kAnyLevel, "m");
    const CrystalModel z = product(x, y);
    const TropModel t = ud_model(z);
    auto left = [](const std::string& v) { return left_name(v); };
    auto right = [](const std::string& v) { return right_name(v); };
    const TropExpr phi = tropicalize(rename(x.eps_of(i) * x.gamma_of(i), left));
    const TropExpr e = tropicalize(rename(y.eps_of(i), right));
    return test_tropical(t.variables, box, opts, [&](const TropPoint& p) {
        const TropPoint moved = ud_apply_e(t, i, c, p);
        bool left_moved = false, right_moved = false;
        for (const auto& v : x.variables) left_moved |= moved.at(left_name(v)) != p.at(left_name(v));
        for (const auto& v : y.variables) right_moved |= moved.at(right_name(v)) != p.at(right_name(v));
        const std::int64_t ph = evaluate(phi, p), ey = evaluate(e, p);
        const bool want_left = c == 1 ? ph >= ey : ph > ey;
        Sides s;
        s.push(static_cast<long>(left_moved) + static_cast<long>(right_moved), 1L, "factors moved");
        s.push(static_cast<long>(left_moved), static_cast<long>(want_left), "left moved");
        return s;
    });
}

Verdict check_ud_r_matches(int n, const TropBox& box, const TestOptions& opts) {
    const RMapExprs r = r_map_exprs(n);
    std::vector<TropExpr> lo, mo;
    for (const auto& e : r.l_out) lo.push_back(tropicalize(e));
    for (const auto& e : r.m_out) mo.push_back(tropicalize(e));
    const auto ls = prefixed("l", n), ms = prefixed("m", n);
    auto vars = ls;
    vars.insert(vars.end(), ms.begin(), ms.end());
    return test_tropical(vars, box, opts, [&](const TropPoint& p) {
        const auto [dl, dm] = combinatorial_R(read(p, ls), read(p, ms));
        TropEvaluator ev(p);
        IntPoint tl, tm;
        for (const auto& e : lo) tl.push_back(ev(e));
        for (const auto& e : mo) tm.push_back(ev(e));
        Sides s;
        push_point(s, tl, dl, "l'");
        push_point(s, tm, dm, "m'");
        return s;
    });
}

Verdict check_ud_r1(int n, int i, const TropBox& box, const TestOptions& opts) {
    const TropModel src = ud_model(r_source(n, kAnyLevel, kAnyLevel)), dst = ud_model(r_target(n, kAnyLevel, kAnyLevel));
    return test_tropical(with(src.variables, {kC}), box, opts, [&](const TropPoint& p) {
        const std::int64_t c = p.at(kC);
        const TropPoint x = only(p, src.variables);
        Sides s;
        push_point(s, ud_apply_e(dst, i, c, ud_R(n, x)), ud_R(n, ud_apply_e(src, i, c, x)));
        return s;
    });
}

Verdict check_ud_r2(int n, int i, const TropBox& box, const TestOptions& opts) {
    const TropModel src = ud_model(r_source(n, kAnyLevel, kAnyLevel)), dst = ud_model(r_target(n, kAnyLevel, kAnyLevel));
    return test_tropical(src.variables, box, opts, [&](const TropPoint& p) {
        Sides s;
        s.push(static_cast<long>(evaluate(dst.eps.at(i), ud_R(n, p))), static_cast<long>(evaluate(src.eps.at(i), p)),
               "eps");
        return s;
    });
}

Verdict check_ud_r3(int n, int i, const TropBox& box, const TestOptions& opts) {
    const TropModel src = ud_model(r_source(n, kAnyLevel, kAnyLevel)), dst = ud_model(r_target(n, kAnyLevel, kAnyLevel));
    return test_tropical(src.variables, box, opts, [&](const TropPoint& p) {
        Sides s;
        s.push(static_cast<long>(evaluate(dst.gamma.at(i), ud_R(n, p))),
               static_cast<long>(evaluate(src.gamma.at(i), p)), "gamma");
        return s;
    });
}

Verdict check_ud_yang_baxter(int n, const TropBox& box, const TestOptions& opts) {
    const auto us = prefixed("u", n), vs = prefixed("v", n), ws = prefixed("w", n);
    auto vars = us;
    vars.insert(vars.end(), vs.begin(), vs.end());
    vars.insert(vars.end(), ws.begin(), ws.end());
    return test_tropical(vars, box, opts, [&](const TropPoint& p) {
        using Triple = std::array<IntPoint, 3>;
        auto r12 = [](Triple t) {
            std::tie(t[0], t[1]) = combinatorial_R(t[0], t[1]);
            return t;
        };
        auto r23 = [](Triple t) {
            std::tie(t[1], t[2]) = combinatorial_R(t[1], t[2]);
            return t;
        };
        const Triple start{read(p, us), read(p, vs), read(p, ws)};
        const Triple lhs = r12(r23(r12(start))), rhs = r23(r12(r23(start)));
        Sides s;
        for (std::size_t f = 0; f < 3; ++f) push_point(s, lhs[f], rhs[f], "factor" + std::to_string(f + 1) + ".");
        return s;
    });
}

Verdict check_ud_level_swap(int n, const TropBox& box, const TestOptions& opts) {
    const auto ls = prefixed("l", n), ms = prefixed("m", n);
    auto vars = ls;
    vars.insert(vars.end(), ms.begin(), ms.end());
    return test_tropical(vars, box, opts, [&](const TropPoint& p) {
        const IntPoint l = read(p, ls), m = read(p, ms);
        const auto [lo, mo] = combinatorial_R(l, m);
        auto total = [](const IntPoint& v) {
            long s = 0;
            for (auto x : v) s += static_cast<long>(x);
            return s;
        };
        Sides s;
        s.push(total(lo), total(m), "sum l'");
        s.push(total(mo), total(l), "sum m'");
        return s;
    });
}

Verdict check_ud_homogeneous(int n, const TropBox& box, const TestOptions& opts) {
    return test_tropical({"a", "b"}, box, opts, [&](const TropPoint& p) {
        const std::size_t size = static_cast<std::size_t>(n + 1);
        const IntPoint l(size, p.at("a")), m(size, p.at("b"));
        const auto [lo, mo] = combinatorial_R(l, m);
        Sides s;
        push_point(s, lo, m, "l'");
        push_point(s, mo, l, "m'");
        return s;
    });
}

Verdict check_ud_eps_invariance(int n, Interval j, const TropBox& box, const TestOptions& opts) {
    const TropExpr e = tropicalize(r_product_system(n, kAnyLevel).eps(j));
    const auto vars = r_source(n, kAnyLevel, kAnyLevel).variables;
    return test_tropical(vars, box, opts, [&](const TropPoint& p) {
        Sides s;
        s.push(static_cast<long>(evaluate(e, ud_R(n, p))), static_cast<long>(evaluate(e, p)), "eps");
        return s;
    });
}

}  // namespace geocrystal
