#pragma once

// The integral kernel K(x, t) of the volume recursion, the exact moment
// polynomials h_{2k+1}(t) = int_0^inf x^{2k+1}/(2k+1)! K(x, t) dx, and
// quadrature checks of both moment identities. This is the only module that
// uses floating point.

#include <vector>

#include "wpv/rational.hpp"

namespace wpv::kernel {

/// h_{2k+1}(t) as an even polynomial; coeffs[p] multiplies t^p.
struct HPoly {
  int k = 0;
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational coefficient(int power) const;
  double evaluate(double t) const;
  Rational evaluate(const Rational& t) const;
};

HPoly h_closed(int k);

/// 1/(1 + e^{pi(x+t)}) + 1/(1 + e^{pi(x-t)}) without overflow.
double kernel_eval(double x, double t);

struct QuadReport {
  double numeric = 0.0;
  double exact = 0.0;
  double abs_err = 0.0;
  int panels_used = 0;
  bool converged = false;
  double cutoff = 0.0;  // X_max
};

/// int_0^inf x^{2k+1}/(2k+1)! K(x, t) dx against h_closed(k)(t).
QuadReport quad_check_single(int k, double t, double tol);

/// int int x^{2i+1} y^{2j+1} / ((2i+1)!(2j+1)!) K(x + y, t) dx dy against
/// h_closed(i + j + 1)(t), evaluated as a genuine two-dimensional integral.
QuadReport quad_check_double(int i, int j, double t, double tol);

/// Analytic bound on int_X^inf u^p/p! K(u, t) du using K(u, t) <= 2 e^{-pi(u - |t|)}.
double tail_bound(int p, double t, double cutoff);

}  // namespace wpv::kernel
