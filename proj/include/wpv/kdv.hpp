#pragma once

// Generating functions assembled from intersection numbers
//   F = sum <prod tau_i^{n_i}>_g prod t_i^{n_i}/n_i!
//   G = sum <kappa_1^m prod tau_i^{n_i}>_g s^m/m! prod t_i^{n_i}/n_i!
// the time shift relating them, and the first KdV flow.

#include <map>
#include <optional>
#include <vector>

#include "wpv/intersect.hpp"
#include "wpv/series.hpp"

namespace wpv::kdv {

TSeries assemble_F(intersect::IntersectionEngine& engine, const Window& w);
TSeries assemble_G(intersect::IntersectionEngine& engine, const Window& w);

/// j -> c_j for 2 <= j <= max_j.
std::map<int, Rational> canonical_shifts(int max_j);

/// Window of F that determines G on w: the shift adds at most 3g - 3 + n
/// insertions, so n runs up to 3G - 3 + 2N.
Window shift_source_window(const Window& w);

/// G on `out` from an s-free F (which should cover shift_source_window(out)).
TSeries assemble_G_by_shift(const TSeries& F, const Window& out);

/// True when every term of the first-flow residual at m comes from
/// coefficients of F inside the window.
bool kdv_safe(const Monomial& m, const Window& w);

/// d_1 u - u d_0 u - c d_0^3 u with u = d_0^2 F, restricted to kdv_safe monomials.
Series kdv1_residual(const TSeries& F, const Rational& dispersion = make_rational(1, 12));

/// Safe monomials at which some term of the residual is nonzero before cancellation.
std::vector<Monomial> kdv_checked_monomials(const TSeries& F);

/// The dispersion constant c forced by the lowest safe monomial where d_0^3 u
/// is nonzero, or nullopt if there is none.
std::optional<Rational> fit_dispersion(const TSeries& F);

struct TauPair {
  TSeries F;
  TSeries G;
  std::map<int, Rational> shifts;
};

/// F on shift_source_window(w), G = F after the shift on w.
TauPair make_tau_pair(intersect::IntersectionEngine& engine, const Window& w);

}  // namespace wpv::kdv
