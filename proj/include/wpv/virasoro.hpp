#pragma once

// The constraint operators Vhat_k, V_k, L_k and the boson operators J_p, E_k,
// their action on exponentials of generating functions, and a solver that
// rebuilds a generating function from the constraints alone.
//
// In terms of T_{2i+1} = t_i / (2i+1)!!:
//   J_p = d/dT_p (p > 0),   J_p = (-p) T_{-p} (p < 0),
//   E_k = 1/4 sum_p :J_{2p+1} J_{2(k-p)-1}: + delta_{k,0}/16,
//   Vhat_k = -1/2 J_{2k+3} + sum_i beta_i s^i E_{k+i},
//   V_k = sum_i alpha_i s^i Vhat_{k+i},
// and L_k = Vhat_k at s = 0.

#include "wpv/diffop.hpp"
#include "wpv/series.hpp"

namespace wpv::virasoro {

/// Operators keep only terms whose t indices are <= max_index and whose s
/// power is <= max_s; infinite sums become finite.
struct Truncation {
  int max_index = 0;
  int max_s = 0;
};

/// Enough to act exactly on every safe residual monomial of the window.
Truncation truncation_for(const Window& w);

DiffOp build_Vhat(int k, const Truncation& tr);
DiffOp build_V(int k, const Truncation& tr);
DiffOp build_L(int k, const Truncation& tr);
/// p odd and nonzero.
DiffOp build_J(int p, const Truncation& tr);
DiffOp build_E(int k, const Truncation& tr);

/// exp(-f) * op(exp f), keeping monomials with at most n_max t insertions
/// (n_max < 0: all). Throws std::invalid_argument if f has a constant term.
Series apply_to_exp(const DiffOp& op, const Series& f, int n_max = -1);

/// Coefficient of m in exp(-f) * op(exp f), computed directly.
Rational residual_coefficient(const DiffOp& op, const Series& f, const Monomial& m);

/// True when every contribution to the residual coefficient of m for a
/// level-k operator comes from coefficients inside the window. Monomials that
/// no connected monomial can reach are safe (their residual must vanish).
bool residual_safe(const Monomial& m, int level, const Window& w);

/// apply_to_exp restricted to the safe monomials; op must carry a level.
Series constraint_residual(const DiffOp& op, const TSeries& f);

enum class Family { L, Vhat };

/// Builds the window's generating function from nothing but the constraints,
/// in order of increasing 3g - 3 + n. Family::L yields the s-free part only.
TSeries solve_series_from_constraints(Family family, const Window& w);

}  // namespace wpv::virasoro
