#include "geocrystal/crystal.hpp"

#include <set>

#include "geocrystal/error.hpp"

namespace geocrystal {

namespace {

const std::string kC = "#c";
const std::string kC1 = "#c1";
const std::string kC2 = "#c2";

Assignment restrict_to(const Assignment& p, const std::vector<std::string>& vars) {
    Assignment out;
    for (const auto& v : vars) out.emplace(v, p.at(v));
    return out;
}

void push_point(Sides& s, const std::vector<std::string>& vars, const Assignment& l, const Assignment& r) {
    for (const auto& v : vars) s.push(l.at(v), r.at(v), v);
}

template <class Map>
const auto& lookup(const Map& m, int i, const char* what, const std::string& model) {
    auto it = m.find(i);
    if (it == m.end()) throw ModelError(model + ": no " + what + " for label " + std::to_string(i));
    return it->second;
}

}  // namespace

const Expr& CrystalModel::gamma_of(int i) const { return lookup(gamma, i, "gamma", name); }
const Expr& CrystalModel::eps_of(int i) const { return lookup(eps, i, "eps", name); }
const std::vector<Expr>& CrystalModel::action_of(int i) const { return lookup(action, i, "action", name); }

void CrystalModel::validate() const {
    cartan.validate();
    const std::set<std::string> vars(variables.begin(), variables.end());
    if (vars.size() != variables.size()) throw ModelError(name + ": duplicate variable");
    if (vars.contains(kActionParameter)) throw ModelError(name + ": variable name 'c' is reserved");
    if (std::set<std::string>(domain.variables.begin(), domain.variables.end()) != vars)
        throw ModelError(name + ": domain variables differ from model variables");
    auto check_vars = [&](const Expr& e, bool allow_c, const std::string& what) {
        for (const auto& v : free_variables(e))
            if (!vars.contains(v) && !(allow_c && v == kActionParameter))
                throw ModelError(name + ": " + what + " uses unknown variable '" + v + "'");
    };
    for (int i : cartan.labels) {
        check_vars(gamma_of(i), false, "gamma");
        check_vars(eps_of(i), false, "eps");
        const auto& act = action_of(i);
        if (act.size() != variables.size()) throw ModelError(name + ": action arity mismatch");
        for (const auto& e : act) check_vars(e, true, "action");
    }
    if (gamma.size() != cartan.labels.size() || eps.size() != cartan.labels.size() ||
        action.size() != cartan.labels.size())
        throw ModelError(name + ": data for labels outside the Cartan index set");
}

Assignment apply_e(const CrystalModel& model, int i, const Rational& c, const Assignment& x) {
    if (c.is_zero()) throw std::invalid_argument("apply_e: c must be nonzero");
    const auto& act = model.action_of(i);
    Assignment point = x;
    point[kActionParameter] = c;
    Evaluator ev(point);
    Assignment out;
    for (std::size_t k = 0; k < act.size(); ++k) out.emplace(model.variables[k], ev(act[k]));
    return out;
}

Rational eval_gamma(const CrystalModel& model, int i, const Assignment& x) { return evaluate(model.gamma_of(i), x); }
Rational eval_eps(const CrystalModel& model, int i, const Assignment& x) { return evaluate(model.eps_of(i), x); }

std::optional<VermaWord> verma_word(int aij, int aji, int i, int j) {
    if (aij > aji) {
        // transposed pattern: the relation is the one for (j, i)
        auto w = verma_word(aji, aij, j, i);
        if (w) std::swap(w->aij, w->aji);
        return w;
    }
    VermaWord w;
    w.aij = aij;
    w.aji = aji;
    if (aij == 0 && aji == 0) {
        w.lhs = {{i, 1, 0}, {j, 0, 1}};
        w.rhs = {{j, 0, 1}, {i, 1, 0}};
    } else if (aij == -1 && aji == -1) {
        w.lhs = {{i, 1, 0}, {j, 1, 1}, {i, 0, 1}};
        w.rhs = {{j, 0, 1}, {i, 1, 1}, {j, 1, 0}};
    } else if (aij == -2 && aji == -1) {
        w.lhs = {{i, 1, 0}, {j, 2, 1}, {i, 1, 1}, {j, 0, 1}};
        w.rhs = {{j, 0, 1}, {i, 1, 1}, {j, 2, 1}, {i, 1, 0}};
    } else if (aij == -3 && aji == -1) {
        w.lhs = {{i, 1, 0}, {j, 3, 1}, {i, 2, 1}, {j, 3, 2}, {i, 1, 1}, {j, 0, 1}};
        w.rhs = {{j, 0, 1}, {i, 1, 1}, {j, 3, 2}, {i, 2, 1}, {j, 3, 1}, {i, 1, 0}};
    } else {
        return std::nullopt;
    }
    return w;
}

Assignment apply_word(const CrystalModel& model, const std::vector<WordFactor>& word, const Rational& c1,
                      const Rational& c2, const Assignment& x) {
    Assignment p = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) p = apply_e(model, it->label, c1.pow(it->p1) * c2.pow(it->p2), p);
    return p;
}

SampleSpec with_parameters(const SampleSpec& domain, const std::vector<std::string>& names) {
    SampleSpec s = domain;
    for (const auto& n : names) s.add_free(n);
    return s;
}

namespace {

VermaWord require_word(const CrystalModel& model, int i, int j) {
    auto w = verma_word(model.cartan(i, j), model.cartan(j, i), i, j);
    if (!w)
        throw ModelError("unsupported Cartan pattern (" + std::to_string(model.cartan(i, j)) + "," +
                         std::to_string(model.cartan(j, i)) + ") for Verma relation");
    return *w;
}

}  // namespace

Verdict check_verma(const CrystalModel& model, int i, int j, const TestOptions& opts) {
    const VermaWord w = require_word(model, i, j);
    return test_identity(with_parameters(model.domain, {kC1, kC2}), opts, [&](const Assignment& p) {
        const Rational c1 = p.at(kC1), c2 = p.at(kC2);
        const Assignment x = restrict_to(p, model.variables);
        Sides s;
        push_point(s, model.variables, apply_word(model, w.lhs, c1, c2, x), apply_word(model, w.rhs, c1, c2, x));
        return s;
    });
}

Verdict check_verma_at_one(const CrystalModel& model, int i, int j, const TestOptions& opts) {
    const VermaWord w = require_word(model, i, j);
    return test_identity(model.domain, opts, [&](const Assignment& x) {
        Sides s;
        push_point(s, model.variables, apply_word(model, w.lhs, 1, 1, x), x);
        push_point(s, model.variables, apply_word(model, w.rhs, 1, 1, x), x);
        return s;
    });
}

Verdict check_axiom_ii(const CrystalModel& model, int i, int j, const TestOptions& opts) {
    const int a = model.cartan(i, j);
    return test_identity(with_parameters(model.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        const Assignment x = restrict_to(p, model.variables);
        Sides s;
        s.push(eval_gamma(model, j, apply_e(model, i, c, x)), c.pow(a) * eval_gamma(model, j, x), "gamma");
        return s;
    });
}

Verdict check_axiom_iv(const CrystalModel& model, int i, int j, const TestOptions& opts) {
    const bool same = i == j;
    if (!same && !(model.cartan(i, j) == 0 && model.cartan(j, i) == 0))
        return Verdict::not_applicable("eps_i under e_j^c is only constrained when a_ij = a_ji = 0");
    return test_identity(with_parameters(model.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        const Assignment x = restrict_to(p, model.variables);
        Sides s;
        const Rational before = eval_eps(model, i, x);
        s.push(eval_eps(model, i, apply_e(model, j, c, x)), same ? before / c : before, "eps");
        return s;
    });
}

Verdict check_group_law(const CrystalModel& model, int i, const TestOptions& opts) {
    return test_identity(with_parameters(model.domain, {kC1, kC2}), opts, [&](const Assignment& p) {
        const Rational c1 = p.at(kC1), c2 = p.at(kC2);
        const Assignment x = restrict_to(p, model.variables);
        Sides s;
        push_point(s, model.variables, apply_e(model, i, c1, apply_e(model, i, c2, x)), apply_e(model, i, c1 * c2, x));
        return s;
    });
}

Verdict check_identity_at_one(const CrystalModel& model, int i, const TestOptions& opts) {
    return test_identity(model.domain, opts, [&](const Assignment& x) {
        Sides s;
        push_point(s, model.variables, apply_e(model, i, 1, x), x);
        return s;
    });
}

Verdict check_domain_preserved(const CrystalModel& model, int i, const TestOptions& opts) {
    return test_identity(with_parameters(model.domain, {kC}), opts, [&](const Assignment& p) {
        const Assignment y = apply_e(model, i, p.at(kC), restrict_to(p, model.variables));
        Sides s;
        for (const auto& con : model.domain.constraints) {
            Rational prod = 1;
            for (const auto& v : con.variables) prod *= y.at(v);
            s.push(prod, con.product, "constraint");
        }
        return s;
    });
}

std::string left_name(const std::string& v) { return v + ".x"; }
std::string right_name(const std::string& v) { return v + ".y"; }

namespace {

Expr rename_vars(const Expr& e, std::string (*f)(const std::string&)) {
    return rename(e, [f](const std::string& v) { return v == kActionParameter ? v : f(v); });
}

SampleSpec rename_spec(const SampleSpec& s, std::string (*f)(const std::string&)) {
    SampleSpec out = s;
    for (auto& v : out.variables) v = f(v);
    for (auto& c : out.constraints)
        for (auto& v : c.variables) v = f(v);
    return out;
}

}  // namespace

std::pair<Expr, Expr> tensor_coefficients(const CrystalModel& x, const CrystalModel& y, int i) {
    const Expr c = var(kActionParameter);
    const Expr eps_x = rename_vars(x.eps_of(i), left_name);
    const Expr gamma_x = rename_vars(x.gamma_of(i), left_name);
    const Expr eps_y = rename_vars(y.eps_of(i), right_name);
    const Expr phi = eps_x * gamma_x;
    const Expr c1 = (c * phi + eps_y) / (phi + eps_y);
    return {c1, c / c1};
}

CrystalModel product(const CrystalModel& x, const CrystalModel& y) {
    if (!(x.cartan == y.cartan)) throw ModelError("product of crystals with different Cartan data");
    CrystalModel z;
    z.name = x.name + " (x) " + y.name;
    z.cartan = x.cartan;
    for (const auto& v : x.variables) z.variables.push_back(left_name(v));
    for (const auto& v : y.variables) z.variables.push_back(right_name(v));
    z.domain = merge(rename_spec(x.domain, left_name), rename_spec(y.domain, right_name));
    for (int i : x.cartan.labels) {
        const Expr gx = rename_vars(x.gamma_of(i), left_name);
        const Expr ex = rename_vars(x.eps_of(i), left_name);
        z.gamma.emplace(i, gx * rename_vars(y.gamma_of(i), right_name));
        z.eps.emplace(i, ex + rename_vars(y.eps_of(i), right_name) / gx);
        auto [c1, c2] = tensor_coefficients(x, y, i);
        std::vector<Expr> act;
        for (const auto& e : x.action_of(i)) act.push_back(substitute(rename_vars(e, left_name), {{kActionParameter, c1}}));
        for (const auto& e : y.action_of(i)) act.push_back(substitute(rename_vars(e, right_name), {{kActionParameter, c2}}));
        z.action.emplace(i, std::move(act));
    }
    z.validate();
    return z;
}

Verdict check_product_associativity(const CrystalModel& x, const CrystalModel& y, const CrystalModel& z, int i,
                                    const TestOptions& opts) {
    const CrystalModel left = product(product(x, y), z);   // v.x.x, v.y.x, v.y
    const CrystalModel right = product(x, product(y, z));  // v.x, v.x.y, v.y.y
    std::map<std::string, std::string> to_left;
    for (const auto& v : x.variables) to_left[left_name(v)] = left_name(left_name(v));
    for (const auto& v : y.variables) to_left[right_name(left_name(v))] = left_name(right_name(v));
    for (const auto& v : z.variables) to_left[right_name(right_name(v))] = right_name(v);
    return test_identity(with_parameters(right.domain, {kC}), opts, [&](const Assignment& p) {
        const Rational c = p.at(kC);
        const Assignment pr = restrict_to(p, right.variables);
        Assignment pl;
        for (const auto& [k, v] : pr) pl.emplace(to_left.at(k), v);
        Sides s;
        s.push(eval_gamma(left, i, pl), eval_gamma(right, i, pr), "gamma");
        s.push(eval_eps(left, i, pl), eval_eps(right, i, pr), "eps");
        const Assignment el = apply_e(left, i, c, pl);
        const Assignment er = apply_e(right, i, c, pr);
        for (const auto& [k, v] : er) s.push(el.at(to_left.at(k)), v, k);
        return s;
    });
}

}  // namespace geocrystal
