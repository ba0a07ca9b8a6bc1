#pragma once

#include "geocrystal/borel.hpp"
#include "geocrystal/epsilon.hpp"
#include "geocrystal/identity.hpp"

namespace geocrystal {

/// Exact determinant by fraction-free elimination with row pivoting.
Rational determinant(const RationalMatrix& m);

/// Rows s+1..t+1, columns s..t (1-based) of the unipotent factor of x.
RationalMatrix borel_minor(const BorelElement& x, int s, int t);

/// x_i(a) x x_i(b) with a = (c-1)/u_i, b = (c^{-1}-1)/phi_i, numerically.
BorelElement borel_action_numeric(const BorelElement& x, int i, const Rational& c);

/// The model's e_i^c expressions agree with numeric matrix multiplication.
Verdict check_borel_action_matrix(int n, int i, const TestOptions& opts);

/// The transformed unipotent part follows the closed form: row i gains
/// (c-1)u_{s,i}/u_i, column i is divided by c, column i+1 becomes
/// c(u_{i+1,t} + (c^{-1}-1)u_{i,t}/u_i), everything else is unchanged.
Verdict check_borel_action_display(int n, int i, const TestOptions& opts);

/// The eps* expansion equals the determinant of the minor.
Verdict check_borel_minor(int n, Interval j, const TestOptions& opts);

/// eps_J and eps*_J read from the matrix product xy equal the product
/// system built from the factor systems.
Verdict check_borel_product_epsilon(int n, Interval j, const TestOptions& opts);

/// e_i^c on the product crystal followed by multiplication equals e_i^c of xy.
Verdict check_borel_product_action(int n, int i, const TestOptions& opts);

/// gamma, eps of xy agree with the product crystal formulas.
Verdict check_borel_product_functions(int n, int i, const TestOptions& opts);

}  // namespace geocrystal
