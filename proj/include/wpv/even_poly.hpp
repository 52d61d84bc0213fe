#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "wpv/rational.hpp"

namespace wpv {

/// Sparse polynomial in q_1..q_n (q_i stands for L_i^2) and an opaque symbol
/// P standing for pi^2. Exponent vectors have n + 1 entries, the last one
/// being the exponent of P. Zero coefficients are never stored.
class EvenPoly {
 public:
  using Exponents = std::vector<int>;

  /// Ascending total degree (P counts as degree 1), ties broken by
  /// descending lexicographic order, so q1 precedes q2 precedes P.
  struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, GradedLex>;

  explicit EvenPoly(int nvars = 0);

  static EvenPoly constant(int nvars, const Rational& c);
  /// q_{index+1}
  static EvenPoly variable(int nvars, int index);
  static EvenPoly pi_squared(int nvars);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& exps, const Rational& c);
  Rational coefficient(const Exponents& exps) const;
  Rational constant_term() const;
  int total_degree() const;  // -1 for the zero polynomial
  bool has_pi() const;

  /// Relabels variable i as variable var_map[i] of a polynomial with
  /// new_nvars variables. P stays P.
  EvenPoly embed(int new_nvars, std::span<const int> var_map) const;

  /// Invariant under every permutation of q_1..q_n.
  bool is_symmetric() const;

  EvenPoly& operator+=(const EvenPoly& other);
  EvenPoly& operator-=(const EvenPoly& other);
  EvenPoly& operator*=(const Rational& c);
  friend EvenPoly operator+(EvenPoly a, const EvenPoly& b) { return a += b; }
  friend EvenPoly operator-(EvenPoly a, const EvenPoly& b) { return a -= b; }
  friend EvenPoly operator*(EvenPoly a, const Rational& c) { return a *= c; }
  friend EvenPoly operator*(const Rational& c, EvenPoly a) { return a *= c; }
  friend EvenPoly operator*(const EvenPoly& a, const EvenPoly& b);
  friend bool operator==(const EvenPoly& a, const EvenPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_shape(const Exponents& exps) const;

  int nvars_;
  TermMap terms_;
};

/// Univariate polynomial in an integration variable t whose coefficients are
/// EvenPolys; key is the power of t.
struct TPoly {
  int nvars = 0;
  std::map<int, EvenPoly> by_power;

  void add(int power, const EvenPoly& coeff);
};

/// (1/L) * integral_0^L p(t) dt with L^2 = q_{target+1}: t^k -> L^k/(k+1).
/// Throws std::domain_error if an odd power of t survives.
EvenPoly avg_integrate(const TPoly& p, int target);

/// "1 + q1 + q2" or "(q1 + 4*P)/48": integer-coefficient numerator over the
/// common denominator, terms in GradedLex order.
std::string to_text(const EvenPoly& p);

/// LaTeX in terms of L_i and pi: q_i^e -> L_i^{2e}, P^e -> \pi^{2e}.
std::string to_latex(const EvenPoly& p);

/// {"nvars": n, "variables": [...], "terms": [{"monomial": [...], "coeff": "p/q"}, ...]}
std::string to_json(const EvenPoly& p);

}  // namespace wpv
