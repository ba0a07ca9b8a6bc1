#pragma once

#include <string>
#include <vector>

#include "geocrystal/crystal.hpp"
#include "geocrystal/epsilon.hpp"

namespace geocrystal {

/// Torus model B_L for A_n^(1): variables <prefix>1..<prefix>{n+1} with
/// product L; e_i^c scales l_i by c and l_{i+1} by 1/c (indices mod n+1,
/// label 0 acting on l_{n+1} and l_1).
CrystalModel model_A_affine(int n, const Rational& level, const std::string& prefix = "l");

/// Local system on labels 1..n of B_L: eps_[s,t] = l_{s+1} ... l_{t+1}, eps*
/// from the partition sum (identically zero for s < t).
EpsilonSystem bl_local_system(int n, const std::string& prefix = "l");

/// D_5^(1) model on l1..l5, lb4, lb3, lb2, lb1 with product L.
CrystalModel model_D5_affine(const Rational& level);

/// The two displayed type A_4 local systems, chains {0,2,3,4} and {0,2,3,5}.
EpsilonSystem d5_local_system(const CrystalModel& d5, const std::vector<int>& chain);

/// B^- in SL_{n+1} with labels 1..n; e_i^c computed as x_i(a) x x_i(b) by
/// symbolic matrix multiplication and re-read into u/t coordinates.
CrystalModel model_Borel(int n);

/// eps_[s,t] = u_{s,t}; eps*_[s,t] = det M_{s,t} expanded along the first column.
EpsilonSystem borel_epsilon_system(int n);

/// Recurrence expansion of det M_{s,t} (for s <= t) as an expression.
Expr borel_minor_expansion(int s, int t);

}  // namespace geocrystal
