#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geocrystal/crystal.hpp"
#include "geocrystal/epsilon.hpp"
#include "geocrystal/identity.hpp"

namespace geocrystal {

/// R : B_L x B_M -> B_M x B_L for A_n^(1), written over l1..l{n+1} and
/// m1..m{n+1}. Subscripts wrap mod n+1 with representatives 1..n+1.
struct RMapExprs {
    int n = 0;
    std::vector<Expr> p;      // p[k-1] = P_k
    std::vector<Expr> l_out;  // l_out[k-1] = l'_k = m_k P_k / P_{k-1}
    std::vector<Expr> m_out;  // m_out[k-1] = m'_k = l_k P_{k-1} / P_k
};

/// P_i(l, m) = sum_{k=1}^{n+1} prod_{j=k}^{n+1} l_{i+j} prod_{j=1}^{k} m_{i+j}.
Expr r_map_p(int n, int i, const std::string& l = "l", const std::string& m = "m");
RMapExprs r_map_exprs(int n);

using Point = std::vector<Rational>;  // coordinates 1..n+1 stored at 0..n

/// Direct numeric evaluation. Throws DivisionByZero when some P_i vanishes.
std::pair<Point, Point> apply_R(const Point& l, const Point& m);

/// The models R runs between, named so both products share variable names.
CrystalModel r_source(int n, const Rational& L, const Rational& M);  // B_L x B_M
CrystalModel r_target(int n, const Rational& L, const Rational& M);  // B_M x B_L

/// R on an assignment of the product variables l<k>.x, m<k>.y.
Assignment apply_R(int n, const Assignment& lm);

/// e_i^c o R = R o e_i^c.
Verdict check_r1(int n, const Rational& L, const Rational& M, int i, const TestOptions& opts);
/// eps_i o R = eps_i.
Verdict check_r2(int n, const Rational& L, const Rational& M, int i, const TestOptions& opts);
/// gamma_i o R = gamma_i.
Verdict check_r3(int n, const Rational& L, const Rational& M, int i, const TestOptions& opts);
/// R12 R23 R12 = R23 R12 R23 on B_L x B_M x B_N.
Verdict check_yang_baxter(int n, const Rational& L, const Rational& M, const Rational& N, const TestOptions& opts);

/// prod l' = M and prod m' = L.
Verdict check_level_swap(int n, const Rational& L, const Rational& M, const TestOptions& opts);
/// R commutes with the cyclic shift k -> k+1 applied to inputs and outputs.
Verdict check_cyclic_symmetry(int n, const Rational& L, const Rational& M, const TestOptions& opts);
/// R(l, l) = (l, l).
Verdict check_diagonal_identity(int n, const Rational& L, const TestOptions& opts);

/// Product system on B_L x B_M built from the local systems
/// eps_[s,t](l) = l_{s+1} ... l_{t+1}.
EpsilonSystem r_product_system(int n, const Rational& L);

/// eps_J and eps*_J of the product system are unchanged by R.
Verdict check_epsilon_invariance(int n, const Rational& L, const Rational& M, Interval j, const TestOptions& opts);

/// Result of solving the fixed-point system at the homogeneous point
/// l0 = (a, ..., a), m0 = (b, ..., b).
struct UniquenessReport {
    int n = 0;
    Rational a, b;
    bool fixed_point_holds = false;  // (m0, l0) satisfies every equation
    Rational p;                      // forced common value of l'_k m'_k
    Rational beta;                   // coefficient of z = l'_1 in q_{n+1}
    Point l_solution, m_solution;
    bool forced = false;             // elimination yields exactly (m0, l0)
    std::size_t perturbations = 0;
    std::size_t perturbations_rejected = 0;
    std::vector<std::string> steps;
    std::string assumption;

    bool passed() const { return fixed_point_holds && forced && perturbations_rejected == perturbations; }
};

/// Throws std::invalid_argument unless a, b > 0.
UniquenessReport uniqueness_probe(int n, const Rational& a, const Rational& b, std::size_t perturbations = 50,
                                  std::uint64_t seed = 1);

}  // namespace geocrystal
