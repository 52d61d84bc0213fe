#pragma once

// Verification sweeps shared by the command line tool: each returns one row
// per identity checked.

#include <functional>
#include <string>
#include <vector>

#include "wpv/even_poly.hpp"
#include "wpv/intersect.hpp"
#include "wpv/volume.hpp"

namespace wpv::verify {

struct CheckRow {
  std::string identity;
  std::string window;
  bool ok = false;
  std::string detail;  // first offending monomial, or a short summary
};

bool all_ok(const std::vector<CheckRow>& rows);

/// v_{g,n} assembled from brackets: coefficient of prod q_i^{e_i} is
/// <kappa_1^{d0} prod tau_{e_i}>_g / (d0! prod e_i!), d0 = d - sum e_i.
/// With via_shift, brackets come from kappa_from_psi instead.
EvenPoly v_from_brackets(intersect::IntersectionEngine& engine, const volume::VolKey& key, bool via_shift = false);

struct KernelRow {
  bool is_double = false;
  int k = 0;  // single: k
  int i = 0, j = 0;
  double t = 0;
  double numeric = 0, exact = 0, abs_err = 0;
  int panels = 0;
  bool ok = false;
};

/// Single moments for k <= kmax and double moments for i + j <= kmax - 1, at
/// t in {0, 1/2, 1, 2}; a row passes when the quadrature converged and
/// |numeric - exact| < threshold.
std::vector<KernelRow> kernel_sweep(int kmax, double tol, double threshold, int jobs);

std::vector<CheckRow> virasoro_suite(int gmax, int nmax, int kmax);

/// First KdV flow on F over (gmax, nmax + 5), so that every residual monomial
/// with label inside (gmax, nmax) is checked, and the shift identity on (gmax, nmax).
std::vector<CheckRow> kdv_suite(intersect::IntersectionEngine& engine, int gmax, int nmax,
                                std::vector<std::string>* checked = nullptr);

/// For every stable (g, n), n >= 1, 3g - 3 + n <= dmax: v_poly equals the
/// bracket assembly and the shift assembly.
std::vector<CheckRow> cross_suite(volume::VolumeEngine& volumes, intersect::IntersectionEngine& engine, int dmax,
                                  int jobs);

/// Runs body(i) for i in [0, count) on up to jobs threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace wpv::verify
