#include "geocrystal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "geocrystal/borel_oracle.hpp"
#include "geocrystal/crystal.hpp"
#include "geocrystal/epsilon.hpp"
#include "geocrystal/error.hpp"
#include "geocrystal/expr_io.hpp"
#include "geocrystal/models.hpp"
#include "geocrystal/tropical_r.hpp"
#include "geocrystal/ud.hpp"

namespace geocrystal {

const std::vector<CheckKind>& check_registry() {
    static const std::vector<CheckKind> kinds{
        {"verma", "verma", "Verma relations",
         "e_i^{c1} e_j^{c2} = e_j^{c2} e_i^{c1} if a_ij = a_ji = 0; "
         "e_i^{c1} e_j^{c1 c2} e_i^{c2} = e_j^{c2} e_i^{c1 c2} e_j^{c1} if a_ij = a_ji = -1"},

        {"axiom-ii", "axioms", "gamma under the action", "gamma_j(e_i^c x) = c^{a_ij} gamma_j(x)"},
        {"axiom-iv", "axioms", "eps under the action",
         "eps_i(e_i^c x) = c^{-1} eps_i(x); eps_i(e_j^c x) = eps_i(x) if a_ij = a_ji = 0"},
        {"group-law", "axioms", "one-parameter group law", "e_i^{c1} e_i^{c2} = e_i^{c1 c2}"},
        {"identity-at-one", "axioms", "unit action", "e_i^1 = id"},
        {"domain-preserved", "axioms", "level preserved", "constraints of x hold for e_i^c x"},

        {"eps-partition", "epsilon", "partition sum",
         "eps*_J = sum over partitions P of J of (-1)^{|J| - l(P)} eps_P"},
        {"eps-alternating", "epsilon", "alternating relations",
         "sum_{j=s-1}^{t} (-1)^{j-s+1} eps_[s,j] eps*_[j+1,t] = 0 = "
         "sum_{j=s-1}^{t} (-1)^{j-s+1} eps*_[s,j] eps_[j+1,t]"},
        {"eps-axiom", "epsilon", "epsilon system axiom with edge formulas",
         "eps_J(e_s^c x) = c^{-1} eps_J(x); eps*_J(e_t^c x) = c^{-1} eps*_J(x); "
         "eps_[s,t](e_{t+1}^c x) = eps_[s,t] + (c-1) eps_[s,t+1] / eps_{t+1}; "
         "eps_[s,t](e_{s-1}^c x) = c eps_[s,t] + (1-c) eps_[s-1,t] / eps_{s-1}; "
         "eps*_[s,t](e_{t+1}^c x) = c eps*_[s,t] + (1-c) eps*_[s,t+1] / eps_{t+1}; "
         "eps*_[s,t](e_{s-1}^c x) = eps*_[s,t] + (c-1) eps*_[s-1,t] / eps_{s-1}; other i leave both unchanged"},
        {"eps-well-defined", "epsilon", "braid invariance of eps_J, eps*_J",
         "eps_J and eps*_J agree on both sides of the Verma relation for (i, j)"},
        {"eps-adjacent-sum", "epsilon", "adjacent sum", "eps_[s-1,s] + eps*_[s-1,s] = eps_{s-1} eps_s"},
        {"eps-recurrence", "epsilon", "recursive eps*",
         "eps*_[s,t] = sum_{j=s}^{t} (-1)^{j-s} eps_[s,j] eps*_[j+1,t] equals the partition sum"},

        {"prod-c1c2", "product", "tensor coefficients",
         "c1 = (c phi_i(x) + eps_i(y)) / (phi_i(x) + eps_i(y)), c2 = c / c1, phi_i = eps_i gamma_i, c1 c2 = c"},
        {"prod-gamma", "product", "product gamma", "gamma_i(x, y) = gamma_i(x) gamma_i(y)"},
        {"prod-eps-singleton", "product", "product eps",
         "eps_[i,i](x, y) = eps_i(x) + eps_i(y) / gamma_i(x)"},
        {"prod-axiom-ii", "product", "gamma under the product action", "gamma_j(e_i^c (x, y)) = c^{a_ij} gamma_j(x, y)"},
        {"prod-axiom-iv", "product", "eps under the product action", "eps_i(e_i^c (x, y)) = c^{-1} eps_i(x, y)"},
        {"prod-eps-axiom", "product", "product system axiom",
         "the product system satisfies the epsilon system axiom and edge formulas"},
        {"prod-eps-partition", "product", "product system partition sum",
         "eps*_[s,t](x, y) = sum over partitions of eps_P(x, y), with eps_[s,t](x, y) = "
         "sum_{k=s-1}^{t} eps_[s,k](y) eps_[k+1,t](x) / prod_{j=s}^{k} gamma_j(x) and eps*_[s,t](x, y) = "
         "sum_{k=s-1}^{t} eps*_[s,k](x) eps*_[k+1,t](y) / prod_{j=k+1}^{t} gamma_j(x)"},
        {"prod-eps-alternating", "product", "product system alternating relations",
         "both alternating sums vanish for the product system"},
        {"prod-associativity", "product", "associativity", "(X x Y) x Z and X x (Y x Z) give the same e_i^c, gamma_i, eps_i"},

        {"borel-action-matrix", "borel-oracle", "action as matrix product",
         "e_i^c(x) = x_i((c-1)/u_i) x x_i((c^{-1}-1)/phi_i), phi_i = u_i t_i / t_{i+1}"},
        {"borel-action-display", "borel-oracle", "transformed unipotent part",
         "u'_{s,i-1} = u_{s,i-1} + (c-1) u_{s,i} / u_i; u'_{i,t} = u_{i,t} / c; "
         "u'_{i+1,t} = c (u_{i+1,t} + (c^{-1}-1) u_{i,t} / u_i); other u unchanged"},
        {"borel-minor", "borel-oracle", "eps* as a minor",
         "eps*_[s,t](x) = det of rows s+1..t+1, columns s..t of x_-"},
        {"borel-prod-eps", "borel-oracle", "product system from matrix multiplication",
         "eps_[s,t](x, y) = u_{s,t}(xy), eps*_[s,t](x, y) = det M_{s,t}(xy)"},
        {"borel-prod-action", "borel-oracle", "product action from matrix multiplication",
         "m(e_i^c (x, y)) = e_i^c(xy)"},
        {"borel-prod-functions", "borel-oracle", "product functions from matrix multiplication",
         "eps_i(xy) = eps_i(x) + eps_i(y) / gamma_i(x), gamma_i(xy) = gamma_i(x) gamma_i(y)"},

        {"r1", "rmap", "R commutes with the action", "e_i^c R = R e_i^c"},
        {"r2", "rmap", "R preserves eps", "eps_i R = eps_i"},
        {"r3", "rmap", "R preserves gamma", "gamma_i R = gamma_i"},
        {"r4-yang-baxter", "rmap", "Yang-Baxter relation", "R_12 R_23 R_12 = R_23 R_12 R_23"},
        {"r-level-swap", "rmap", "level swap", "prod l' = M, prod m' = L"},
        {"r-cyclic", "rmap", "cyclic symmetry", "R(sigma l, sigma m) = sigma R(l, m), (sigma l)_k = l_{k+1}"},
        {"r-diagonal", "rmap", "diagonal", "R(l, l) = (l, l)"},
        {"r-homogeneous", "rmap", "homogeneous point", "R((a,...,a), (b,...,b)) = ((b,...,b), (a,...,a))"},

        {"inv-eps", "invariance", "R-invariance of the product system",
         "eps_J(R(l, m)) = eps_J(l, m), eps*_J(R(l, m)) = eps*_J(l, m)"},
        {"inv-eps-star-adjacent", "invariance", "adjacent eps* of the product system",
         "eps*_[i,i+1](l, m) = l_{i+2} m_{i+2}"},

        {"uniq-fixed-point", "uniqueness", "fixed point",
         "R(l0, m0) = (m0, l0) and (m0, l0) solves eps_i = eps_i(l0, m0), gamma_i = 1, "
         "eps*_[i,i+1] = eps*_[i,i+1](l0, m0)"},
        {"uniq-forced", "uniqueness", "forced solution",
         "l'_k m'_k = P, l'_{k+1} + P / l'_k = a + b, prod l' = b^{n+1} force l' = (b,...,b), m' = (a,...,a)"},
        {"uniq-perturbation", "uniqueness", "perturbations rejected",
         "l'_1 -> l'_1 + delta, l'_{n+1} rescaled, violates at least one equation"},
        {"uniq-prehomogeneity", "uniqueness", "prehomogeneity",
         "B_L x B_M has a dense orbit; assumed, not checked"},

        {"ud-axiom-ii", "ud", "tropical gamma under the action", "Gamma_j(e_i^C x) = Gamma_j(x) + a_ij C"},
        {"ud-axiom-iv", "ud", "tropical eps under the action",
         "E_i(e_i^C x) = E_i(x) - C; E_i(e_j^C x) = E_i(x) if a_ij = a_ji = 0"},
        {"ud-operator", "ud", "tropical B_L operator",
         "e_i^C l = (..., l_i + C, l_{i+1} - C, ...), e_i^{C1} e_i^{C2} = e_i^{C1+C2}"},
        {"ud-tensor-sum", "ud", "tropical tensor coefficients",
         "C1 = max(C + Phi_i(x), E_i(y)) - max(Phi_i(x), E_i(y)), C1 + C2 = C"},
        {"ud-tensor-dichotomy", "ud", "tensor product rule",
         "for C = 1 or -1 exactly one factor moves: the left one iff Phi_i(x) >= E_i(y) (C = 1) or "
         "Phi_i(x) > E_i(y) (C = -1)"},
        {"ud-r-matches", "ud", "combinatorial R",
         "UDP_i = max_k (sum_{j=k}^{n+1} l_{i+j} + sum_{j=1}^{k} m_{i+j}), "
         "l'_i = m_i + UDP_i - UDP_{i-1}, m'_i = l_i + UDP_{i-1} - UDP_i"},
        {"ud-r1", "ud", "combinatorial R commutes with the action", "e_i^C R = R e_i^C"},
        {"ud-r2", "ud", "combinatorial R preserves E", "E_i R = E_i"},
        {"ud-r3", "ud", "combinatorial R preserves Gamma", "Gamma_i R = Gamma_i"},
        {"ud-r4-yang-baxter", "ud", "combinatorial Yang-Baxter relation", "R_12 R_23 R_12 = R_23 R_12 R_23"},
        {"ud-level-swap", "ud", "combinatorial level swap", "sum l' = sum m, sum m' = sum l"},
        {"ud-homogeneous", "ud", "combinatorial homogeneous point", "R((a,...,a), (b,...,b)) = ((b,...,b), (a,...,a))"},
        {"ud-prod-eps", "ud", "tropical product eps invariance", "UD(eps_J)(R(l, m)) = UD(eps_J)(l, m)"},
    };
    return kinds;
}

const CheckKind& check_kind(const std::string& id) {
    for (const auto& k : check_registry())
        if (k.id == id) return k;
    throw std::out_of_range("unknown check kind '" + id + "'");
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"verma",  "axioms",     "epsilon",    "product", "borel-oracle",
                                                "rmap",   "invariance", "uniqueness", "ud"};
    return names;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::not_applicable: return "not_applicable";
        case Status::error: return "error";
    }
    return "?";
}

bool SuiteReport::passed() const { return count(Status::fail) == 0 && count(Status::error) == 0; }

std::size_t SuiteReport::count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [&](const CheckResult& r) { return r.status == s; }));
}

nlohmann::json to_json(const Counterexample& c) {
    nlohmann::json point = nlohmann::json::object();
    for (const auto& [k, v] : c.point) point[k] = v.str();
    return {{"point", point}, {"component", c.component}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}};
}

nlohmann::json SuiteReport::to_json(bool timing) const {
    using nlohmann::json;
    json p{{"L", params.L.str()}, {"M", params.M.str()}, {"N", params.N.str()},
           {"a", params.a.str()}, {"b", params.b.str()}, {"trials", trials}, {"model", params.model}};
    p["n"] = params.n ? json(*params.n) : json("default");
    json rs = json::array();
    for (const auto& r : results) {
        const CheckKind& k = check_kind(r.kind);
        json j{{"suite", r.suite},       {"check_id", r.check_id}, {"kind", r.kind},
               {"identity", k.identity}, {"formula", k.formula},   {"verdict", status_name(r.status)},
               {"trials", r.trials},     {"resamples", r.resamples}};
        if (r.counterexample) j["counterexample"] = geocrystal::to_json(*r.counterexample);
        if (!r.note.empty()) j["note"] = r.note;
        if (timing) j["elapsed_ms"] = r.elapsed_ms;
        rs.push_back(std::move(j));
    }
    json out{{"suite", suite}, {"params", p}, {"seed", seed}, {"results", rs}};
    if (timing) out["elapsed_ms"] = elapsed_ms;
    return out;
}

std::uint64_t default_seed(const std::string& suite) { return derive_seed(20240601, suite); }

namespace {

using Runner = std::function<Verdict(const TestOptions&)>;

struct Plan {
    std::string suite;
    std::vector<PlannedCheck> tasks;

    void add(const std::string& kind, const std::string& id, Runner run) {
        if (check_kind(kind).suite != suite) throw std::logic_error("kind " + kind + " used outside its suite");
        tasks.push_back({kind, id, std::move(run)});
    }
};

std::string pair_id(int i, int j) { return "i=" + std::to_string(i) + ",j=" + std::to_string(j); }
std::string label_id(int i) { return "i=" + std::to_string(i); }
std::string interval_id(Interval j) { return "J=[" + std::to_string(j.s) + "," + std::to_string(j.t) + "]"; }

std::vector<int> sizes(const SuiteParams& p, std::vector<int> fallback) {
    return p.n ? std::vector<int>{*p.n} : fallback;
}

bool wants(const SuiteParams& p, const std::string& model) { return p.model == "all" || p.model == model; }

std::string bl_tag(int n) { return "BL" + std::to_string(n); }
std::string borel_tag(int n) { return "Borel" + std::to_string(n); }

using ModelPtr = std::shared_ptr<const CrystalModel>;
using SystemPtr = std::shared_ptr<const EpsilonSystem>;

ModelPtr share(CrystalModel m) { return std::make_shared<const CrystalModel>(std::move(m)); }
SystemPtr share(EpsilonSystem s) { return std::make_shared<const EpsilonSystem>(std::move(s)); }

struct Tagged {
    std::string tag;
    ModelPtr model;
};

std::vector<Tagged> crystal_models(const SuiteParams& p, const std::vector<int>& bl_sizes,
                                   const std::vector<int>& borel_sizes) {
    std::vector<Tagged> out;
    if (wants(p, "bl"))
        for (int n : sizes(p, bl_sizes)) out.push_back({bl_tag(n), share(model_A_affine(n, p.L))});
    if (wants(p, "d5")) out.push_back({"D5", share(model_D5_affine(p.L))});
    if (wants(p, "borel"))
        for (int n : sizes(p, borel_sizes)) out.push_back({borel_tag(n), share(model_Borel(n))});
    return out;
}

void plan_verma(Plan& plan, const SuiteParams& p) {
    for (const auto& [tag, m] : crystal_models(p, {1, 2, 3}, {1, 2, 3, 4})) {
        const auto& labels = m->cartan.labels;
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = a + 1; b < labels.size(); ++b) {
                const int i = labels[a], j = labels[b];
                plan.add("verma", tag + "/" + pair_id(i, j), [m, i, j](const TestOptions& o) {
                    if (!verma_word(m->cartan(i, j), m->cartan(j, i), i, j))
                        return Verdict::not_applicable("Cartan pattern (" + std::to_string(m->cartan(i, j)) + "," +
                                                       std::to_string(m->cartan(j, i)) + ") has no Verma relation");
                    return check_verma(*m, i, j, o);
                });
            }
    }
}

void plan_axioms(Plan& plan, const SuiteParams& p) {
    for (const auto& [tag, m] : crystal_models(p, {1, 2, 3}, {1, 2, 3, 4})) {
        for (int i : m->cartan.labels) {
            const std::string at = tag + "/" + label_id(i);
            plan.add("group-law", at, [m, i](const TestOptions& o) { return check_group_law(*m, i, o); });
            plan.add("identity-at-one", at, [m, i](const TestOptions& o) { return check_identity_at_one(*m, i, o); });
            plan.add("domain-preserved", at, [m, i](const TestOptions& o) { return check_domain_preserved(*m, i, o); });
            for (int j : m->cartan.labels) {
                const std::string ij = tag + "/" + pair_id(i, j);
                plan.add("axiom-ii", ij, [m, i, j](const TestOptions& o) { return check_axiom_ii(*m, i, j, o); });
                plan.add("axiom-iv", ij, [m, i, j](const TestOptions& o) { return check_axiom_iv(*m, i, j, o); });
            }
        }
    }
}

template <class Add>
void plan_system_checks(Plan& plan, const std::string& prefix, const std::string& tag, const ModelPtr& m,
                        const SystemPtr& sys, Add kind) {
    const int k = sys->size();
    for (const Interval j : sys->intervals()) {
        const std::string at = tag + "/" + interval_id(j);
        plan.add(kind("partition"), at, [m, sys, j](const TestOptions& o) { return check_partition_relation(*sys, *m, j, o); });
        plan.add(kind("alternating"), at,
                 [m, sys, j](const TestOptions& o) { return check_alternating_identities(*sys, *m, j, o); });
        for (int pos = 1; pos <= k; ++pos) {
            const int label = sys->label(pos);
            plan.add(kind("axiom"), at + "/" + label_id(label),
                     [m, sys, j, label](const TestOptions& o) { return check_epsilon_axiom(*sys, *m, j, label, o); });
        }
        if (j.s == 1)
            plan.add(kind("axiom"), at + "/left-edge",
                     [](const TestOptions&) { return Verdict::not_applicable("[s-1,t] leaves the chain"); });
        if (j.t == k)
            plan.add(kind("axiom"), at + "/right-edge",
                     [](const TestOptions&) { return Verdict::not_applicable("[s,t+1] leaves the chain"); });
        if (prefix == "eps") {
            plan.add("eps-recurrence", at,
                     [m, sys, j](const TestOptions& o) { return check_recurrence_matches_partition(*sys, *m, j, o); });
            for (int a = 1; a <= k; ++a)
                for (int b = a + 1; b <= k; ++b) {
                    const int li = sys->label(a), lj = sys->label(b);
                    plan.add("eps-well-defined", at + "/" + pair_id(li, lj), [m, sys, li, lj, j](const TestOptions& o) {
                        return check_well_defined(*sys, *m, li, lj, j, o);
                    });
                }
        }
    }
    if (prefix == "eps")
        for (int s = 2; s <= k; ++s)
            plan.add("eps-adjacent-sum", tag + "/s=" + std::to_string(s),
                     [m, sys, s](const TestOptions& o) { return check_adjacent_sum(*sys, *m, s, o); });
}

void plan_epsilon(Plan& plan, const SuiteParams& p) {
    auto kind = [](const std::string& what) { return "eps-" + what; };
    if (wants(p, "borel"))
        for (int n : sizes(p, {1, 2, 3, 4}))
            plan_system_checks(plan, "eps", borel_tag(n), share(model_Borel(n)), share(borel_epsilon_system(n)), kind);
    if (wants(p, "d5")) {
        const ModelPtr d5 = share(model_D5_affine(p.L));
        plan_system_checks(plan, "eps", "D5[0234]", d5, share(d5_local_system(*d5, {0, 2, 3, 4})), kind);
        plan_system_checks(plan, "eps", "D5[0235]", d5, share(d5_local_system(*d5, {0, 2, 3, 5})), kind);
    }
    if (wants(p, "bl"))
        for (int n : sizes(p, {1, 2, 3}))
            plan_system_checks(plan, "eps", bl_tag(n), share(model_A_affine(n, p.L)), share(bl_local_system(n)), kind);
}

void plan_product_pair(Plan& plan, const std::string& tag, const CrystalModel& x, const CrystalModel& y,
                       const EpsilonSystem& ex, const EpsilonSystem& ey) {
    const ModelPtr z = share(product(x, y));
    const ModelPtr xp = share(x), yp = share(y);
    for (int i : z->cartan.labels) {
        const std::string at = tag + "/" + label_id(i);
        plan.add("prod-c1c2", at, [xp, yp, z, i](const TestOptions& o) {
            const auto [c1, c2] = tensor_coefficients(*xp, *yp, i);
            return identical_on_domain(c1 * c2, var(kActionParameter), with_parameters(z->domain, {kActionParameter}), o);
        });
        plan.add("prod-gamma", at, [xp, yp, z, i](const TestOptions& o) {
            const Expr want = rename(xp->gamma_of(i), [](const std::string& v) { return left_name(v); }) *
                              rename(yp->gamma_of(i), [](const std::string& v) { return right_name(v); });
            return identical_on_domain(z->gamma_of(i), want, z->domain, o);
        });
        plan.add("prod-axiom-iv", at + ",j=" + std::to_string(i),
                 [z, i](const TestOptions& o) { return check_axiom_iv(*z, i, i, o); });
        for (int j : z->cartan.labels)
            plan.add("prod-axiom-ii", tag + "/" + pair_id(i, j),
                     [z, i, j](const TestOptions& o) { return check_axiom_ii(*z, i, j, o); });
    }
    const SystemPtr sys = share(product_epsilon(ex, ey, x));
    for (int pos = 1; pos <= sys->size(); ++pos) {
        const int i = sys->label(pos);
        plan.add("prod-eps-singleton", tag + "/" + label_id(i), [z, sys, pos, i](const TestOptions& o) {
            return identical_on_domain(sys->eps({pos, pos}), z->eps_of(i), z->domain, o);
        });
    }
    plan_system_checks(plan, "prod-eps", tag, z, sys, [](const std::string& what) { return "prod-eps-" + what; });
}

void plan_product(Plan& plan, const SuiteParams& p) {
    for (int n : sizes(p, {1, 2, 3})) {
        plan_product_pair(plan, "BLxBM" + std::to_string(n), model_A_affine(n, p.L, "l"), model_A_affine(n, p.M, "m"),
                          bl_local_system(n, "l"), bl_local_system(n, "m"));
        if (n <= 3) {
            const CrystalModel b = model_Borel(n);
            const EpsilonSystem e = borel_epsilon_system(n);
            plan_product_pair(plan, "BorelxBorel" + std::to_string(n), b, b, e, e);
        }
        const ModelPtr x = share(model_A_affine(n, p.L)), y = share(model_A_affine(n, p.M)),
                       w = share(model_A_affine(n, p.N));
        for (int i = 0; i <= n; ++i)
            plan.add("prod-associativity", bl_tag(n) + "/" + label_id(i),
                     [x, y, w, i](const TestOptions& o) { return check_product_associativity(*x, *y, *w, i, o); });
    }
}

void plan_borel(Plan& plan, const SuiteParams& p) {
    for (int n : sizes(p, {1, 2, 3, 4})) {
        const std::string tag = borel_tag(n);
        for (int i = 1; i <= n; ++i) {
            const std::string at = tag + "/" + label_id(i);
            plan.add("borel-action-matrix", at, [n, i](const TestOptions& o) { return check_borel_action_matrix(n, i, o); });
            plan.add("borel-action-display", at, [n, i](const TestOptions& o) { return check_borel_action_display(n, i, o); });
            plan.add("borel-prod-action", at, [n, i](const TestOptions& o) { return check_borel_product_action(n, i, o); });
            plan.add("borel-prod-functions", at,
                     [n, i](const TestOptions& o) { return check_borel_product_functions(n, i, o); });
        }
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) {
                const Interval j{s, t};
                const std::string at = tag + "/" + interval_id(j);
                plan.add("borel-minor", at, [n, j](const TestOptions& o) { return check_borel_minor(n, j, o); });
                plan.add("borel-prod-eps", at, [n, j](const TestOptions& o) { return check_borel_product_epsilon(n, j, o); });
            }
    }
}

void plan_rmap(Plan& plan, const SuiteParams& p) {
    const Rational L = p.L, M = p.M, N = p.N;
    for (int n : sizes(p, {1, 2, 3})) {
        const std::string tag = bl_tag(n);
        for (int i = 0; i <= n; ++i) {
            const std::string at = tag + "/" + label_id(i);
            plan.add("r1", at, [=](const TestOptions& o) { return check_r1(n, L, M, i, o); });
            plan.add("r2", at, [=](const TestOptions& o) { return check_r2(n, L, M, i, o); });
            plan.add("r3", at, [=](const TestOptions& o) { return check_r3(n, L, M, i, o); });
        }
        plan.add("r4-yang-baxter", tag, [=](const TestOptions& o) { return check_yang_baxter(n, L, M, N, o); });
        plan.add("r4-yang-baxter", tag + "/M=N", [=](const TestOptions& o) { return check_yang_baxter(n, L, M, M, o); });
        plan.add("r-level-swap", tag, [=](const TestOptions& o) { return check_level_swap(n, L, M, o); });
        plan.add("r-cyclic", tag, [=](const TestOptions& o) { return check_cyclic_symmetry(n, L, M, o); });
        plan.add("r-diagonal", tag, [=](const TestOptions& o) { return check_diagonal_identity(n, L, o); });
        plan.add("r-homogeneous", tag, [=](const TestOptions&) {
            const std::size_t size = static_cast<std::size_t>(n + 1);
            const Point l0(size, p.a), m0(size, p.b);
            const auto out = apply_R(l0, m0);
            Verdict v;
            v.trials = 1;
            if (out.first != m0 || out.second != l0) {
                v.outcome = Outcome::counterexample;
                v.witness = Counterexample{{{"a", p.a}, {"b", p.b}}, "l'_1", out.first[0], m0[0]};
            }
            return v;
        });
    }
}

void plan_invariance(Plan& plan, const SuiteParams& p) {
    const Rational L = p.L, M = p.M;
    for (int n : sizes(p, {2, 3})) {
        const std::string tag = bl_tag(n);
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) {
                const Interval j{s, t};
                plan.add("inv-eps", tag + "/" + interval_id(j),
                         [=](const TestOptions& o) { return check_epsilon_invariance(n, L, M, j, o); });
            }
        for (int i = 1; i < n; ++i)
            plan.add("inv-eps-star-adjacent", tag + "/" + label_id(i), [=](const TestOptions& o) {
                const EpsilonSystem sys = r_product_system(n, L);
                const Expr want = var(left_name("l" + std::to_string(i + 2))) * var(right_name("m" + std::to_string(i + 2)));
                return identical_on_domain(sys.eps_star({i, i + 1}), want, r_source(n, L, M).domain, o);
            });
    }
}

Verdict from_flag(bool ok, std::size_t trials, Counterexample witness, std::string note) {
    Verdict v;
    v.trials = trials;
    v.note = std::move(note);
    if (!ok) {
        v.outcome = Outcome::counterexample;
        v.witness = std::move(witness);
    }
    return v;
}

std::string join_steps(const UniquenessReport& r) {
    std::string s;
    for (const auto& step : r.steps) s += (s.empty() ? "" : "; ") + step;
    return s;
}

void plan_uniqueness(Plan& plan, const SuiteParams& p) {
    const Rational a = p.a, b = p.b;
    for (int n : sizes(p, {1, 2, 3, 4})) {
        const std::string tag = bl_tag(n);
        const Assignment params{{"a", a}, {"b", b}};
        plan.add("uniq-fixed-point", tag, [=](const TestOptions& o) {
            const UniquenessReport r = uniqueness_probe(n, a, b, 0, o.seed);
            return from_flag(r.fixed_point_holds, 1, {params, "fixed point", 0, 0}, "");
        });
        plan.add("uniq-forced", tag, [=](const TestOptions& o) {
            const UniquenessReport r = uniqueness_probe(n, a, b, 0, o.seed);
            const Rational got = r.l_solution.empty() ? Rational(0) : r.l_solution[0];
            return from_flag(r.forced, 1, {params, "l'_1", got, b}, join_steps(r));
        });
        plan.add("uniq-perturbation", tag, [=](const TestOptions& o) {
            const UniquenessReport r = uniqueness_probe(n, a, b, o.trials < 50 ? 50 : o.trials, o.seed);
            Verdict v = from_flag(r.perturbations_rejected == r.perturbations, r.perturbations,
                                  {params, "rejected perturbations", static_cast<long>(r.perturbations_rejected),
                                   static_cast<long>(r.perturbations)},
                                  std::to_string(r.perturbations_rejected) + " of " + std::to_string(r.perturbations) +
                                      " perturbations violate an equation");
            return v;
        });
        plan.add("uniq-prehomogeneity", tag, [=](const TestOptions&) {
            return Verdict::not_applicable(uniqueness_probe(n, a, b, 0).assumption);
        });
    }
}

void plan_ud(Plan& plan, const SuiteParams& p) {
    const TropBox box{};
    std::vector<Tagged> models;
    for (int n : sizes(p, {1, 2, 3})) models.push_back({bl_tag(n), share(model_A_affine(n, p.L))});
    if (!p.n) models.push_back({"D5", share(model_D5_affine(p.L))});
    for (const auto& [tag, m] : models)
        for (int i : m->cartan.labels)
            for (int j : m->cartan.labels) {
                plan.add("ud-axiom-ii", tag + "/" + pair_id(i, j),
                         [=](const TestOptions& o) { return check_ud_axiom_ii(*m, i, j, box, o); });
                plan.add("ud-axiom-iv", tag + "/" + pair_id(i, j),
                         [=](const TestOptions& o) { return check_ud_axiom_iv(*m, i, j, box, o); });
            }
    for (int n : sizes(p, {1, 2, 3})) {
        const std::string tag = bl_tag(n);
        for (int i = 0; i <= n; ++i) {
            const std::string at = tag + "/" + label_id(i);
            plan.add("ud-operator", at, [=](const TestOptions& o) { return check_ud_operator(n, i, box, o); });
            plan.add("ud-tensor-sum", at, [=](const TestOptions& o) { return check_ud_tensor_sum(n, i, box, o); });
            plan.add("ud-tensor-dichotomy", at + "/C=1",
                     [=](const TestOptions& o) { return check_ud_tensor_dichotomy(n, i, 1, box, o); });
            plan.add("ud-tensor-dichotomy", at + "/C=-1",
                     [=](const TestOptions& o) { return check_ud_tensor_dichotomy(n, i, -1, box, o); });
            plan.add("ud-r1", at, [=](const TestOptions& o) { return check_ud_r1(n, i, box, o); });
            plan.add("ud-r2", at, [=](const TestOptions& o) { return check_ud_r2(n, i, box, o); });
            plan.add("ud-r3", at, [=](const TestOptions& o) { return check_ud_r3(n, i, box, o); });
        }
        plan.add("ud-r-matches", tag, [=](const TestOptions& o) { return check_ud_r_matches(n, box, o); });
        plan.add("ud-r4-yang-baxter", tag, [=](const TestOptions& o) { return check_ud_yang_baxter(n, box, o); });
        plan.add("ud-level-swap", tag, [=](const TestOptions& o) { return check_ud_level_swap(n, box, o); });
        plan.add("ud-homogeneous", tag, [=](const TestOptions& o) { return check_ud_homogeneous(n, box, o); });
        for (int s = 1; s <= n; ++s)
            for (int t = s; t <= n; ++t) {
                const Interval j{s, t};
                plan.add("ud-prod-eps", tag + "/" + interval_id(j),
                         [=](const TestOptions& o) { return check_ud_eps_invariance(n, j, box, o); });
            }
    }
}

void validate(const std::string& name, const SuiteParams& p) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw std::invalid_argument("unknown suite '" + name + "'");
    static const std::set<std::string> filters{"all", "bl", "d5", "borel"};
    if (!filters.count(p.model)) throw std::invalid_argument("unknown model filter '" + p.model + "'");
    if (p.trials && *p.trials == 0) throw std::invalid_argument("trials must be positive");
    for (const auto& v : {p.L, p.M, p.N})
        if (v.sign() <= 0) throw std::invalid_argument("levels must be positive");
    if (p.a.sign() <= 0 || p.b.sign() <= 0) throw std::invalid_argument("a and b must be positive");
    if (!p.n) return;
    if (*p.n < 1) throw std::invalid_argument("n must be at least 1");
    const bool finite_only = name == "borel-oracle" || ((name == "verma" || name == "axioms" || name == "epsilon") &&
                                                        p.model == "borel");
    const int limit = finite_only ? 6 : 4;
    if (*p.n > limit)
        throw std::invalid_argument("n = " + std::to_string(*p.n) + " is outside the supported range n <= " +
                                    std::to_string(limit) + " for suite " + name);
}

CheckResult execute(const std::string& suite, const PlannedCheck& task, std::size_t trials, std::uint64_t seed) {
    CheckResult r;
    r.suite = suite;
    r.check_id = task.kind + "/" + task.id;
    r.kind = task.kind;
    TestOptions opts;
    opts.trials = trials;
    opts.seed = derive_seed(seed, r.check_id);
    const auto start = std::chrono::steady_clock::now();
    try {
        const Verdict v = task.run(opts);
        r.trials = v.trials;
        r.resamples = v.resamples;
        r.note = v.note;
        r.counterexample = v.witness;
        switch (v.outcome) {
            case Outcome::equal: r.status = Status::pass; break;
            case Outcome::counterexample: r.status = Status::fail; break;
            case Outcome::not_applicable: r.status = Status::not_applicable; break;
        }
    } catch (const std::exception& e) {
        r.status = Status::error;
        r.note = e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

SuiteReport run_checks(const std::string& suite, const std::vector<PlannedCheck>& checks, const SuiteParams& params,
                       unsigned threads) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = suite;
    report.params = params;
    report.seed = params.seed ? *params.seed : default_seed(suite);
    report.trials = params.trials ? *params.trials : (suite == "ud" ? 1000 : 100);
    report.results.resize(checks.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, checks.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < checks.size(); k = next++)
            report.results[k] = execute(suite, checks[k], report.trials, report.seed);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::sort(report.results.begin(), report.results.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
    for (std::size_t k = 1; k < report.results.size(); ++k)
        if (report.results[k].check_id == report.results[k - 1].check_id)
            throw std::logic_error("duplicate check id " + report.results[k].check_id);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params, unsigned threads) {
    validate(name, params);
    const auto start = std::chrono::steady_clock::now();
    Plan plan{name, {}};
    if (name == "verma") plan_verma(plan, params);
    else if (name == "axioms") plan_axioms(plan, params);
    else if (name == "epsilon") plan_epsilon(plan, params);
    else if (name == "product") plan_product(plan, params);
    else if (name == "borel-oracle") plan_borel(plan, params);
    else if (name == "rmap") plan_rmap(plan, params);
    else if (name == "invariance") plan_invariance(plan, params);
    else if (name == "uniqueness") plan_uniqueness(plan, params);
    else plan_ud(plan, params);
    SuiteReport report = run_checks(name, plan.tasks, params, threads);
    // counts model construction too
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string emit_ledger() {
    auto cell = [](std::string s) {
        std::string out;
        for (char ch : s) out += ch == '|' ? std::string("\\|") : std::string(1, ch);
        return out;
    };
    std::ostringstream os;
    os << "# Identity ledger\n\n"
       << "Generated by `geocrystal ledger`; one row per check kind run by `geocrystal verify`.\n\n"
       << "| check id | identity | formula | suite |\n"
       << "|---|---|---|---|\n";
    for (const auto& k : check_registry())
        os << "| " << k.id << " | " << cell(k.identity) << " | `" << cell(k.formula) << "` | " << k.suite << " |\n";
    return os.str();
}

}  // namespace geocrystal
