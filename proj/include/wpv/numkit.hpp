#pragma once

// Exact special sequences used throughout: even Bernoulli numbers, double
// factorials and the alpha/beta/gamma coefficient families.
//
//   sum_i alpha_i s^i = sin(sqrt(2s)) / sqrt(2s)
//   sum_i beta_i  s^i = sqrt(2s) / sin(sqrt(2s))
//
// so the two are reciprocal series. gamma_shift_coeff(j) is the coefficient
// c_j of the time shift t_j -> t_j + c_j s^(j-1) relating the kappa_1 and
// pure psi generating functions.

#include <vector>

#include "wpv/rational.hpp"

namespace wpv::numkit {

/// B_{2m}, with z/2 * coth(z/2) = sum_m B_{2m} z^{2m} / (2m)!.
Rational bernoulli(int m);

/// n!! for odd n >= -1, with (-1)!! = 1. Throws std::domain_error otherwise.
BigInt double_factorial(int n);

/// (-2)^i / (2i+1)!
Rational alpha_coeff(int i);

/// (-1)^(i-1) 2^i (2^(2i) - 2) B_{2i} / (2i)!; zero for i < 0.
Rational beta_coeff(int i);

/// c_j = -(2j-1)!! alpha_{j-1} = (-1)^j / (j-1)!, for j >= 2.
Rational gamma_shift_coeff(int j);

struct CoeffTable {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::vector<Rational> bernoulli;
  std::vector<Rational> gamma_coeff;  // index j; entries 0 and 1 are unused zeros
};

/// All four sequences for indices 0..n.
CoeffTable coeff_table(int n);

}  // namespace wpv::numkit
