#pragma once

// Truncated formal power series in s, t_0, t_1, ...
//
// A monomial s^m prod t_i^{n_i} of a connected generating function belongs to
// exactly one moduli space (g, n):
//   n = sum n_i,   3g - 3 = m + sum (i - 1) n_i.
// Truncation windows are boxes in (g, n), never raw total degree.

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpv/rational.hpp"

namespace wpv {

struct Monomial {
  int s = 0;
  std::vector<int> t;  // t[i] = exponent of t_i, no trailing zeros

  Monomial() = default;
  Monomial(int s_pow, std::vector<int> t_exps);

  int n() const;                  // number of t insertions
  int weight() const;             // m + sum (i - 1) n_i
  int t_exp(int i) const;
  int max_index() const;          // -1 when there are no t's
  bool is_one() const { return s == 0 && t.empty(); }

  void trim();
  Monomial operator*(const Monomial& other) const;
  /// Quotient when other divides *this.
  std::optional<Monomial> divide(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex on (m, n_0, n_1, ...): ascending total degree, then descending lex.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::string to_string(const Monomial& m);

struct GenusN {
  int g = 0;
  int n = 0;
  friend auto operator<=>(const GenusN&, const GenusN&) = default;
};

/// (g, n) of a connected monomial, or nullopt when g would be non-integral,
/// negative, n == 0, or (g, n) unstable.
std::optional<GenusN> genus_label(const Monomial& m);

struct Window {
  int g_max = 0;
  int n_max = 1;

  Window() = default;
  Window(int g, int n);

  bool contains(GenusN gn) const { return gn.g <= g_max && gn.n <= n_max; }
  /// Largest psi index or kappa power possible in the window: max 3g - 3 + n.
  int max_index() const { return 3 * g_max - 3 + n_max; }
  /// Every stable (g, n) of the window in increasing 3g - 3 + n, then g.
  std::vector<GenusN> cells() const;

  friend bool operator==(const Window&, const Window&) = default;
};

/// Raw sparse series; no (g, n) validation. Used for residuals, products and
/// exponentials, whose monomials need not be connected.
class Series {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  Series() = default;
  static Series constant(const Rational& c);
  static Series monomial(const Monomial& m, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  Series derivative(int index) const;
  Series mul_monomial(const Monomial& m, const Rational& c = 1) const;
  /// Product keeping only monomials with at most n_max t-insertions
  /// (n_max < 0: no truncation). Truncation by n is exact because n is additive.
  Series mul(const Series& other, int n_max = -1) const;
  Series filtered(const std::function<bool(const Monomial&)>& keep) const;
  /// Terms with no s.
  Series at_s_zero() const;

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

std::string to_string(const Series& s);

/// A connected generating function truncated to a (g, n) window. Every stored
/// monomial has a valid label inside the window; anything else is rejected.
class TSeries {
 public:
  explicit TSeries(Window window);

  const Window& window() const { return window_; }
  const Series& series() const { return series_; }
  const Series::TermMap& terms() const { return series_.terms(); }

  /// Throws std::invalid_argument for monomials outside the window.
  void add_term(const Monomial& m, const Rational& c);
  /// Throws std::invalid_argument when m is not a valid window monomial.
  Rational coefficient(const Monomial& m) const;
  bool admits(const Monomial& m) const;

  /// Same window, terms restricted to s^0.
  TSeries at_s_zero() const;

  friend bool operator==(const TSeries& a, const TSeries& b) {
    return a.window_ == b.window_ && a.series_ == b.series_;
  }

 private:
  Window window_;
  Series series_;
};

/// exp(f) truncated to at most n_max t-insertions. f must have no constant
/// term and no pure-s monomials.
Series series_exp(const Series& f, int n_max);
Series series_exp(const TSeries& f);

/// Substitutes t_j -> t_j + c_j s^{j-1} for each (j, c_j) in shifts and keeps
/// the terms that land in out. Shifts for j = 0, 1 are rejected.
TSeries shift_substitute(const TSeries& f, const std::map<int, Rational>& shifts, const Window& out);

}  // namespace wpv
