#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "geocrystal/crystal.hpp"
#include "geocrystal/epsilon.hpp"
#include "geocrystal/identity.hpp"
#include "geocrystal/trop_expr.hpp"

namespace geocrystal {

/// Ultra-discretization of a crystal model: gamma, eps and the action
/// tropicalized, with the action parameter c becoming the integer C.
struct TropModel {
    std::string name;
    std::vector<std::string> variables;
    CartanData cartan;
    Semiring semiring = Semiring::max_plus;
    std::map<int, TropExpr> gamma;
    std::map<int, TropExpr> eps;
    std::map<int, std::vector<TropExpr>> action;
    std::vector<std::string> warnings;
};

/// Throws NotSubtractionFree if any map of the model is not.
TropModel ud_model(const CrystalModel& model, Semiring semiring = Semiring::max_plus);

TropPoint ud_apply_e(const TropModel& model, int i, std::int64_t c, const TropPoint& x);

using IntPoint = std::vector<std::int64_t>;  // coordinates 1..n+1 stored at 0..n

/// B_L operator: C added at position i, subtracted at i+1 (mod n+1).
IntPoint ud_crystal_operator(int n, int i, std::int64_t c, const IntPoint& l);

/// C1 = max(C + Phi_i(x), E_i(y)) - max(Phi_i(x), E_i(y)) and C2 = C - C1 over
/// the product variables, with Phi_i = UD(eps_i gamma_i) and E_i = UD(eps_i).
std::pair<TropExpr, TropExpr> ud_tensor_coeffs(const CrystalModel& x, const CrystalModel& y, int i,
                                               Semiring semiring = Semiring::max_plus);

/// UDP_i = max_k (sum_{j=k}^{n+1} l_{i+j} + sum_{j=1}^{k} m_{i+j}),
/// l'_i = m_i + UDP_i - UDP_{i-1}, m'_i = l_i + UDP_{i-1} - UDP_i.
std::pair<IntPoint, IntPoint> combinatorial_R(const IntPoint& l, const IntPoint& m,
                                              Semiring semiring = Semiring::max_plus);

struct TropBox {
    std::int64_t lo = -50;
    std::int64_t hi = 50;
};

using TropSideFunction = std::function<Sides(const TropPoint&)>;

/// Uniform integer points of the box for every name in `variables`;
/// opts.trials points. Values are compared exactly.
Verdict test_tropical(const std::vector<std::string>& variables, const TropBox& box, const TestOptions& opts,
                      const TropSideFunction& sides);

Verdict check_tropical_identity(const TropExpr& a, const TropExpr& b, const TropBox& box, const TestOptions& opts);

/// Gamma_j(e_i^C x) = Gamma_j(x) + a_ij C.
Verdict check_ud_axiom_ii(const CrystalModel& model, int i, int j, const TropBox& box, const TestOptions& opts);
/// E_i(e_i^C x) = E_i(x) - C; E_i(e_j^C x) = E_i(x) when a_ij = a_ji = 0.
Verdict check_ud_axiom_iv(const CrystalModel& model, int i, int j, const TropBox& box, const TestOptions& opts);
/// Tropicalized B_L action equals ud_crystal_operator and composes additively.
Verdict check_ud_operator(int n, int i, const TropBox& box, const TestOptions& opts);
/// C1 + C2 = C, and tropicalizing (c1, c2) gives the same values as ud_tensor_coeffs.
Verdict check_ud_tensor_sum(int n, int i, const TropBox& box, const TestOptions& opts);
/// With C = +-1 on B_L x B_M exactly one factor moves. For C = 1 it is the
/// left one iff Phi_i(x) >= E_i(y); for C = -1 iff Phi_i(x) > E_i(y).
Verdict check_ud_tensor_dichotomy(int n, int i, std::int64_t c, const TropBox& box, const TestOptions& opts);

/// combinatorial_R agrees with tropicalizing the rational R.
Verdict check_ud_r_matches(int n, const TropBox& box, const TestOptions& opts);
Verdict check_ud_r1(int n, int i, const TropBox& box, const TestOptions& opts);
Verdict check_ud_r2(int n, int i, const TropBox& box, const TestOptions& opts);
Verdict check_ud_r3(int n, int i, const TropBox& box, const TestOptions& opts);
Verdict check_ud_yang_baxter(int n, const TropBox& box, const TestOptions& opts);
/// Sum l' = sum m and sum m' = sum l.
Verdict check_ud_level_swap(int n, const TropBox& box, const TestOptions& opts);
/// (a,...,a), (b,...,b) goes to (b,...,b), (a,...,a).
Verdict check_ud_homogeneous(int n, const TropBox& box, const TestOptions& opts);
/// UD(eps_J) of the B_L x B_M product system is unchanged by combinatorial_R.
Verdict check_ud_eps_invariance(int n, Interval j, const TropBox& box, const TestOptions& opts);

}  // namespace geocrystal
