#include "geocrystal/models.hpp"

#include "geocrystal/borel.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"

namespace geocrystal {

namespace {

std::string name_at(const std::string& prefix, int k, int n) {
    // representatives 1..n+1
    const int m = n + 1;
    const int r = ((k - 1) % m + m) % m + 1;
    return prefix + std::to_string(r);
}

}  // namespace

CrystalModel model_A_affine(int n, const Rational& level, const std::string& prefix) {
    if (n < 1) throw ModelError("B_L needs n >= 1");
    if (level.sign() <= 0) throw ModelError("B_L needs a positive level");
    CrystalModel m;
    m.name = "B_L(A" + std::to_string(n) + "^(1), L=" + level.str() + ")";
    m.cartan = CartanData::affine_A(n);
    for (int k = 1; k <= n + 1; ++k) m.variables.push_back(prefix + std::to_string(k));
    m.domain.variables = m.variables;
    m.domain.constraints = {{m.variables, level}};
    const Expr c = var(kActionParameter);
    for (int i = 0; i <= n; ++i) {
        const std::string li = name_at(prefix, i, n), lnext = name_at(prefix, i + 1, n);
        m.gamma.emplace(i, var(li) / var(lnext));
        m.eps.emplace(i, var(lnext));
        std::vector<Expr> act;
        for (const auto& v : m.variables) {
            if (v == li)
                act.push_back(c * var(v));
            else if (v == lnext)
                act.push_back(var(v) / c);
            else
                act.push_back(var(v));
        }
        m.action.emplace(i, std::move(act));
    }
    m.validate();
    return m;
}

EpsilonSystem bl_local_system(int n, const std::string& prefix) {
    std::vector<int> chain;
    for (int i = 1; i <= n; ++i) chain.push_back(i);
    EpsilonSystem sys(chain);
    for (const auto& j : sys.intervals()) {
        std::vector<Expr> f;
        for (int k = j.s + 1; k <= j.t + 1; ++k) f.push_back(var(prefix + std::to_string(k)));
        sys.set_eps(j, product_of(f));
    }
    complete_by_partition_sum(sys);
    return sys;
}

CrystalModel model_D5_affine(const Rational& level) {
    if (level.sign() <= 0) throw ModelError("D5 model needs a positive level");
    CrystalModel m;
    m.name = "B_L(D5^(1), L=" + level.str() + ")";
    m.cartan = CartanData::affine_D5();
    m.variables = {"l1", "l2", "l3", "l4", "l5", "lb4", "lb3", "lb2", "lb1"};
    m.domain.variables = m.variables;
    m.domain.constraints = {{m.variables, level}};

    auto l = [](int k) { return var("l" + std::to_string(k)); };
    auto lb = [](int k) { return var("lb" + std::to_string(k)); };
    const Expr c = var(kActionParameter);
    auto xi = [&](int k) { return (l(k) + c * lb(k)) / (l(k) + lb(k)); };
    auto act = [&](std::map<std::string, Expr> changed) {
        std::vector<Expr> out;
        for (const auto& v : m.variables) {
            auto it = changed.find(v);
            out.push_back(it == changed.end() ? var(v) : it->second);
        }
        return out;
    };

    m.eps.emplace(0, parse_expr("l1*(l2/lb2 + 1)"));
    m.gamma.emplace(0, parse_expr("lb1*lb2/(l1*l2)"));
    const Expr x2 = xi(2);
    m.action.emplace(0, act({{"l1", l(1) / x2}, {"l2", l(2) * x2 / c}, {"lb2", lb(2) * x2}, {"lb1", lb(1) * c / x2}}));
    for (int i = 1; i <= 3; ++i) {
        const std::string si = std::to_string(i), sn = std::to_string(i + 1);
        m.eps.emplace(i, parse_expr("lb" + si + "*(l" + sn + "/lb" + sn + " + 1)"));
        m.gamma.emplace(i, parse_expr("l" + si + "*lb" + sn + "/(lb" + si + "*l" + sn + ")"));
        const Expr x = xi(i + 1);
        m.action.emplace(i, act({{"l" + si, c * l(i) / x},
                                 {"l" + sn, l(i + 1) * x / c},
                                 {"lb" + sn, lb(i + 1) * x},
                                 {"lb" + si, lb(i) / x}}));
    }
    m.eps.emplace(4, parse_expr("l5*lb4"));
    m.gamma.emplace(4, parse_expr("l4/(l5*lb4)"));
    m.action.emplace(4, act({{"l4", c * l(4)}, {"l5", l(5) / c}}));
    m.eps.emplace(5, parse_expr("lb4"));
    m.gamma.emplace(5, parse_expr("l4*l5/lb4"));
    m.action.emplace(5, act({{"l5", c * l(5)}, {"lb4", lb(4) / c}}));
    m.validate();
    return m;
}

EpsilonSystem d5_local_system(const CrystalModel& d5, const std::vector<int>& chain) {
    EpsilonSystem t(chain);
    auto set = [&](int s, int e, const char* eps, const char* eps_star) {
        t.set_eps({s, e}, parse_expr(eps));
        t.set_eps_star({s, e}, parse_expr(eps_star));
    };
    // positions: 1 -> 0, 2 -> 2, 3 -> 3, 4 -> 4 or 5
    set(1, 2, "l1*l2*(l3/lb3 + 1)", "l1*lb2*(l3/lb3 + 1)");
    set(2, 3, "lb2*l3*(l4/lb4 + 1)", "lb2*lb3*(l4/lb4 + 1)");
    set(1, 3, "l1*l2*l3*(l4/lb4 + 1)", "l1*lb2*lb3*(l4/lb4 + 1)");
    if (chain == std::vector<int>{0, 2, 3, 4}) {
        set(3, 4, "lb3*l4*l5", "lb3*lb4*l5");
        set(2, 4, "lb2*l3*l4*l5", "lb2*lb3*lb4*l5");
        set(1, 4, "l1*l2*l3*l4*l5", "l1*lb2*lb3*lb4*l5");
    } else if (chain == std::vector<int>{0, 2, 3, 5}) {
        set(3, 4, "lb3*l4", "lb3*lb4");
        set(2, 4, "lb2*l3*l4", "lb2*lb3*lb4");
        set(1, 4, "l1*l2*l3*l4", "l1*lb2*lb3*lb4");
    } else {
        throw ModelError("no local epsilon table for this D5 chain");
    }
    return local_epsilon(d5, chain, t);
}

CrystalModel model_Borel(int n) {
    if (n < 1) throw ModelError("Borel model needs n >= 1");
    CrystalModel m;
    m.name = "B-(SL" + std::to_string(n + 1) + ")";
    m.cartan = CartanData::finite_A(n);
    for (int s = 1; s <= n; ++s)
        for (int t = s; t <= n; ++t) m.variables.push_back(borel_u(s, t));
    std::vector<std::string> torus;
    for (int k = 1; k <= n + 1; ++k) torus.push_back(borel_t(k));
    m.variables.insert(m.variables.end(), torus.begin(), torus.end());
    m.domain.variables = m.variables;
    m.domain.positive = false;
    m.domain.constraints = {{torus, Rational(1)}};

    const SymMatrix x = borel_symbolic_matrix(n);
    const Expr c = var(kActionParameter);
    const int size = n + 1;
    for (int i = 1; i <= n; ++i) {
        const Expr u = var(borel_u(i, i));
        const Expr phi = u * var(borel_t(i)) / var(borel_t(i + 1));
        m.eps.emplace(i, u);
        m.gamma.emplace(i, var(borel_t(i)) / var(borel_t(i + 1)));

        SymMatrix left = SymMatrix::Identity(size, size);
        SymMatrix right = SymMatrix::Identity(size, size);
        left(i - 1, i) = SymScalar((c - Expr::one()) / u);
        right(i - 1, i) = SymScalar((pow(c, -1) - Expr::one()) / phi);
        const SymMatrix lx = left.lazyProduct(x);
        const SymMatrix y = lx.lazyProduct(right);

        std::vector<Expr> act;
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) {
                const SymScalar& entry = y(t, s - 1);
                const SymScalar& diag = y(s - 1, s - 1);
                if (entry.same_node(x(t, s - 1)) && diag.same_node(x(s - 1, s - 1)))
                    act.push_back(var(borel_u(s, t)));
                else
                    act.push_back((entry / diag).expr());
            }
        for (int k = 1; k <= size; ++k) {
            const SymScalar& d = y(k - 1, k - 1);
            act.push_back(d.same_node(x(k - 1, k - 1)) ? var(borel_t(k)) : d.expr());
        }
        m.action.emplace(i, std::move(act));
    }
    m.validate();
    return m;
}

Expr borel_minor_expansion(int s, int t) {
    if (s > t) return Expr::one();
    std::vector<Expr> plus, minus;
    for (int k = s; k <= t; ++k) {
        const Expr u = var(borel_u(s, k));
        Expr term = k == t ? u : u * borel_minor_expansion(k + 1, t);
        ((k - s) % 2 == 0 ? plus : minus).push_back(term);
    }
    if (minus.empty()) return sum_of(plus);
    return sum_of(plus) - sum_of(minus);
}

EpsilonSystem borel_epsilon_system(int n) {
    std::vector<int> chain;
    for (int i = 1; i <= n; ++i) chain.push_back(i);
    EpsilonSystem sys(chain);
    for (const auto& j : sys.intervals()) {
        sys.set_eps(j, var(borel_u(j.s, j.t)));
        if (j.s < j.t) sys.set_eps_star(j, borel_minor_expansion(j.s, j.t));
    }
    return sys;
}

}  // namespace geocrystal
