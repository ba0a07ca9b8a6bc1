#include "geocrystal/epsilon.hpp"

#include <algorithm>

#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"

namespace geocrystal {

namespace {

const std::string kC = "#c";
const std::string kC1 = "#c1";
const std::string kC2 = "#c2";

std::string interval_str(Interval j) { return "[" + std::to_string(j.s) + "," + std::to_string(j.t) + "]"; }

Assignment restrict_to(const Assignment& p, const std::vector<std::string>& vars) {
    Assignment out;
    for (const auto& v : vars) out.emplace(v, p.at(v));
    return out;
}

// Product of the nonempty factors; the empty product is 1.
Expr product_skipping_empty(const std::vector<std::pair<bool, Expr>>& factors) {
    std::vector<Expr> kept;
    for (const auto& [empty, e] : factors)
        if (!empty) kept.push_back(e);
    return product_of(kept);
}

// Values of eps_K and eps*_K at one point, cached per interval.
class TableValues {
public:
    TableValues(const EpsilonSystem& sys, Assignment x) : sys_(sys), point_(std::move(x)), ev_(point_) {}
    Rational eps(Interval j) { return j.empty() ? Rational(1) : ev_(sys_.eps(j)); }
    Rational eps_star(Interval j) { return j.empty() ? Rational(1) : ev_(sys_.eps_star(j)); }

private:
    const EpsilonSystem& sys_;
    Assignment point_;
    Evaluator ev_;
};

Rational partition_sum(TableValues& tv, Interval j) {
    Rational total = 0;
    for (const auto& p : enumerate_partitions(j)) {
        Rational term = 1;
        for (const auto& b : p) term *= tv.eps(b);
        total += ((j.size() - static_cast<int>(p.size())) % 2 == 0) ? term : -term;
    }
    return total;
}

}  // namespace

std::vector<Partition> enumerate_partitions(Interval j) {
    if (j.empty()) throw std::invalid_argument("enumerate_partitions: empty interval");
    const int k = j.t - j.s;
    std::vector<Partition> out;
    out.reserve(std::size_t{1} << k);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        Partition p;
        int start = j.s;
        for (int b = 0; b < k; ++b)
            if (mask >> b & 1u) {
                p.push_back({start, j.s + b});
                start = j.s + b + 1;
            }
        p.push_back({start, j.t});
        out.push_back(std::move(p));
    }
    return out;
}

int EpsilonSystem::label(int position) const {
    if (position < 1 || position > size()) throw ModelError("chain position out of range");
    return chain_[static_cast<std::size_t>(position - 1)];
}

int EpsilonSystem::position(int label) const {
    auto it = std::find(chain_.begin(), chain_.end(), label);
    return it == chain_.end() ? 0 : static_cast<int>(it - chain_.begin()) + 1;
}

namespace {

void require_in_chain(const EpsilonSystem& sys, Interval j) {
    if (j.empty() || j.s < 1 || j.t > sys.size())
        throw ModelError("interval " + interval_str(j) + " outside the chain");
}

}  // namespace

void EpsilonSystem::set_eps(Interval j, Expr e) {
    require_in_chain(*this, j);
    eps_.insert_or_assign(j, std::move(e));
}

void EpsilonSystem::set_eps_star(Interval j, Expr e) {
    require_in_chain(*this, j);
    eps_star_.insert_or_assign(j, std::move(e));
}

Expr EpsilonSystem::eps(Interval j) const {
    if (j.empty()) return Expr::one();
    auto it = eps_.find(j);
    if (it == eps_.end()) throw ModelError("missing eps entry for " + interval_str(j));
    return it->second;
}

Expr EpsilonSystem::eps_star(Interval j) const {
    if (j.empty()) return Expr::one();
    if (j.s == j.t && !eps_star_.contains(j)) return eps(j);
    auto it = eps_star_.find(j);
    if (it == eps_star_.end()) throw ModelError("missing eps* entry for " + interval_str(j));
    return it->second;
}

void EpsilonSystem::require_complete() const {
    for (const auto& j : intervals()) {
        (void)eps(j);
        (void)eps_star(j);
    }
}

std::vector<Interval> EpsilonSystem::intervals() const {
    std::vector<Interval> out;
    for (int s = 1; s <= size(); ++s)
        for (int t = s; t <= size(); ++t) out.push_back({s, t});
    return out;
}

EpsilonSystem EpsilonSystem::transformed(const std::function<Expr(const Expr&)>& f) const {
    EpsilonSystem out(chain_);
    for (const auto& [j, e] : eps_) out.eps_.emplace(j, f(e));
    for (const auto& [j, e] : eps_star_) out.eps_star_.emplace(j, f(e));
    return out;
}

nlohmann::json EpsilonSystem::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& j : intervals()) {
        nlohmann::json row{{"s", j.s}, {"t", j.t}};
        if (has_eps(j)) row["eps"] = geocrystal::to_json(eps(j));
        if (has_eps_star(j) || j.s == j.t) row["eps_star"] = geocrystal::to_json(eps_star(j));
        entries.push_back(std::move(row));
    }
    return {{"chain", chain_}, {"entries", entries}};
}

Expr eps_of_partition(const EpsilonSystem& sys, const Partition& p) {
    std::vector<Expr> factors;
    for (const auto& b : p) factors.push_back(sys.eps(b));
    return product_of(factors);
}

Expr eps_star_from_eps(const EpsilonSystem& sys, Interval j) {
    std::vector<Expr> plus, minus;
    for (const auto& p : enumerate_partitions(j)) {
        auto& bucket = (j.size() - static_cast<int>(p.size())) % 2 == 0 ? plus : minus;
        bucket.push_back(eps_of_partition(sys, p));
    }
    if (minus.empty()) return sum_of(plus);
    return sum_of(plus) - sum_of(minus);
}

Expr eps_star_by_recurrence(const EpsilonSystem& sys, Interval j) {
    std::vector<Expr> plus, minus;
    for (int k = j.s; k <= j.t; ++k) {
        const Interval head{j.s, k}, tail{k + 1, j.t};
        Expr term = tail.empty() ? sys.eps(head) : sys.eps(head) * sys.eps_star(tail);
        ((k - j.s) % 2 == 0 ? plus : minus).push_back(term);
    }
    if (minus.empty()) return sum_of(plus);
    return sum_of(plus) - sum_of(minus);
}

void complete_by_partition_sum(EpsilonSystem& sys) {
    for (const auto& j : sys.intervals())
        if (j.s < j.t) sys.set_eps_star(j, eps_star_from_eps(sys, j));
}

std::string symbol_name(Interval j) {
    if (j.s == j.t) return "e" + std::to_string(j.s);
    return "e" + std::to_string(j.s) + "_" + std::to_string(j.t);
}

EpsilonSystem symbolic_system(int k) {
    std::vector<int> chain;
    for (int p = 1; p <= k; ++p) chain.push_back(p);
    EpsilonSystem sys(chain);
    for (const auto& j : sys.intervals()) sys.set_eps(j, var(symbol_name(j)));
    complete_by_partition_sum(sys);
    return sys;
}

EpsilonSystem local_epsilon(const CrystalModel& model, const std::vector<int>& chain, const EpsilonSystem& table) {
    if (!model.cartan.is_type_A_chain(chain)) throw ModelError("chain is not a type A sub-diagram of " + model.name);
    if (table.chain() != chain) throw ModelError("epsilon table is indexed by a different chain");
    EpsilonSystem out = table;
    for (int p = 1; p <= out.size(); ++p) {
        const Interval single{p, p};
        const Expr& own = model.eps_of(chain[static_cast<std::size_t>(p - 1)]);
        if (!out.has_eps(single))
            out.set_eps(single, own);
        else if (!structurally_equal(out.eps(single), own))
            throw ModelError("singleton eps entry differs from the model's eps_" + std::to_string(chain[p - 1]));
    }
    out.require_complete();
    return out;
}

EpsClause eps_clause(const EpsilonSystem& sys, Interval j, int label) {
    const int p = sys.position(label);
    if (p == 0) throw ModelError("label " + std::to_string(label) + " is not on the chain");
    if (p == j.s) return EpsClause::scale;
    if (p == j.t + 1) return EpsClause::right_edge;
    if (p == j.s - 1) return EpsClause::left_edge;
    return EpsClause::invariant;
}

EpsClause eps_star_clause(const EpsilonSystem& sys, Interval j, int label) {
    const int p = sys.position(label);
    if (p == 0) throw ModelError("label " + std::to_string(label) + " is not on the chain");
    if (p == j.t) return EpsClause::scale;
    if (p == j.t + 1) return EpsClause::right_edge;
    if (p == j.s - 1) return EpsClause::left_edge;
    return EpsClause::invariant;
}

const char* clause_name(EpsClause c) {
    switch (c) {
        case EpsClause::scale: return "scale";
        case EpsClause::invariant: return "invariant";
        case EpsClause::right_edge: return "right-edge";
        case EpsClause::left_edge: return "left-edge";
    }
    return "?";
}

Verdict check_partition_relation(const EpsilonSystem& sys, const CrystalModel& model, Interval j,
                                 const TestOptions& opts) {
    return test_identity(model.domain, opts, [&](const Assignment& x) {
        TableValues tv(sys, x);
        Sides s;
        s.push(tv.eps_star(j), partition_sum(tv, j), "eps*");
        return s;
    });
}

Verdict check_alternating_identities(const EpsilonSystem& sys, const CrystalModel& model, Interval j,
                                     const TestOptions& opts) {
    if (j.s >= j.t) return Verdict::not_applicable("alternating relations are stated for s < t");
    return test_identity(model.domain, opts, [&](const Assignment& x) {
        TableValues tv(sys, x);
        Rational plain = 0, starred = 0;
        for (int k = j.s - 1; k <= j.t; ++k) {
            const Interval head{j.s, k}, tail{k + 1, j.t};
            const bool positive = (k - (j.s - 1)) % 2 == 0;
            const Rational a = tv.eps(head) * tv.eps_star(tail);
            const Rational b = tv.eps_star(head) * tv.eps(tail);
            plain += positive ? a : -a;
            starred += positive ? b : -b;
        }
        Sides s;
        s.push(plain, 0, "eps.eps*");
        s.push(starred, 0, "eps*.eps");
        return s;
    });
}

Verdict check_epsilon_axiom(const EpsilonSystem& sys, const CrystalModel& model, Interval j, int label,
                            const TestOptions& opts) {
    const EpsClause ce = eps_clause(sys, j, label);
    const EpsClause cs = eps_star_clause(sys, j, label);
    const int p = sys.position(label);
    return test_identity(with_parameters(model.domain, {kC}), opts, [&](const Assignment& pt) {
        const Rational c = pt.at(kC);
        const Assignment x = restrict_to(pt, model.variables);
        const Assignment y = apply_e(model, label, c, x);
        TableValues before(sys, x), after(sys, y);
        const Rational e = before.eps(j), es = before.eps_star(j);
        const Rational ep = before.eps({p, p});
        Rational want_e, want_s;
        switch (ce) {
            case EpsClause::scale: want_e = e / c; break;
            case EpsClause::invariant: want_e = e; break;
            case EpsClause::right_edge: want_e = e + (c - 1) * before.eps({j.s, j.t + 1}) / ep; break;
            case EpsClause::left_edge: want_e = c * e + (1 - c) * before.eps({j.s - 1, j.t}) / ep; break;
        }
        switch (cs) {
            case EpsClause::scale: want_s = es / c; break;
            case EpsClause::invariant: want_s = es; break;
            case EpsClause::right_edge: want_s = c * es + (1 - c) * before.eps_star({j.s, j.t + 1}) / ep; break;
            case EpsClause::left_edge: want_s = es + (c - 1) * before.eps_star({j.s - 1, j.t}) / ep; break;
        }
        Sides s;
        s.push(after.eps(j), want_e, "eps");
        s.push(after.eps_star(j), want_s, "eps*");
        return s;
    });
}

Verdict check_well_defined(const EpsilonSystem& sys, const CrystalModel& model, int i, int j, Interval interval,
                           const TestOptions& opts) {
    const int aij = model.cartan(i, j), aji = model.cartan(j, i);
    if (!((aij == 0 && aji == 0) || (aij == -1 && aji == -1)))
        return Verdict::not_applicable("braid invariance is stated for (0,0) and (-1,-1) pairs");
    const auto w = verma_word(aij, aji, i, j);
    return test_identity(with_parameters(model.domain, {kC1, kC2}), opts, [&](const Assignment& pt) {
        const Rational c1 = pt.at(kC1), c2 = pt.at(kC2);
        const Assignment x = restrict_to(pt, model.variables);
        TableValues l(sys, apply_word(model, w->lhs, c1, c2, x)), r(sys, apply_word(model, w->rhs, c1, c2, x));
        Sides s;
        s.push(l.eps(interval), r.eps(interval), "eps");
        s.push(l.eps_star(interval), r.eps_star(interval), "eps*");
        return s;
    });
}

Verdict check_adjacent_sum(const EpsilonSystem& sys, const CrystalModel& model, int s, const TestOptions& opts) {
    if (s < 2 || s > sys.size()) return Verdict::not_applicable("needs positions s-1 and s on the chain");
    return test_identity(model.domain, opts, [&](const Assignment& x) {
        TableValues tv(sys, x);
        Sides out;
        out.push(tv.eps({s - 1, s}) + tv.eps_star({s - 1, s}), tv.eps({s - 1, s - 1}) * tv.eps({s, s}), "sum");
        return out;
    });
}

Verdict check_recurrence_matches_partition(const EpsilonSystem& sys, const CrystalModel& model, Interval j,
                                           const TestOptions& opts) {
    return test_identity(model.domain, opts, [&](const Assignment& x) {
        TableValues tv(sys, x);
        // solve eps*_[a,t] from the alternating relation, shortest intervals first
        std::map<int, Rational> star;  // keyed by a, for intervals [a, j.t]
        star[j.t + 1] = 1;
        for (int a = j.t; a >= j.s; --a) {
            Rational v = 0;
            for (int k = a; k <= j.t; ++k) {
                const Rational term = tv.eps({a, k}) * star.at(k + 1);
                v += (k - a) % 2 == 0 ? term : -term;
            }
            star[a] = v;
        }
        Sides s;
        s.push(star.at(j.s), partition_sum(tv, j), "recurrence");
        return s;
    });
}

EpsilonSystem product_epsilon(const EpsilonSystem& ex, const EpsilonSystem& ey, const CrystalModel& x) {
    if (ex.chain() != ey.chain()) throw ModelError("product_epsilon: factor systems use different chains");
    ex.require_complete();
    ey.require_complete();
    auto left = [](const Expr& e) { return rename(e, [](const std::string& v) { return left_name(v); }); };
    auto right = [](const Expr& e) { return rename(e, [](const std::string& v) { return right_name(v); }); };
    const EpsilonSystem lx = ex.transformed(left);
    const EpsilonSystem ry = ey.transformed(right);
    std::map<int, Expr> gamma;
    for (int p = 1; p <= ex.size(); ++p) gamma.emplace(p, left(x.gamma_of(ex.label(p))));
    auto gamma_product = [&](int from, int to) {
        std::vector<Expr> f;
        for (int p = from; p <= to; ++p) f.push_back(gamma.at(p));
        return f;
    };

    EpsilonSystem out(ex.chain());
    for (const auto& j : out.intervals()) {
        std::vector<Expr> terms;
        for (int k = j.s - 1; k <= j.t; ++k) {
            const Interval yk{j.s, k}, xk{k + 1, j.t};
            Expr num = product_skipping_empty({{yk.empty(), ry.eps(yk)}, {xk.empty(), lx.eps(xk)}});
            const auto den = gamma_product(j.s, k);
            terms.push_back(den.empty() ? num : num / product_of(den));
        }
        out.set_eps(j, sum_of(terms));

        std::vector<Expr> star_terms;
        for (int k = j.s - 1; k <= j.t; ++k) {
            const Interval xk{j.s, k}, yk{k + 1, j.t};
            Expr num = product_skipping_empty({{xk.empty(), lx.eps_star(xk)}, {yk.empty(), ry.eps_star(yk)}});
            const auto den = gamma_product(k + 1, j.t);
            star_terms.push_back(den.empty() ? num : num / product_of(den));
        }
        out.set_eps_star(j, sum_of(star_terms));
    }
    return out;
}

}  // namespace geocrystal
