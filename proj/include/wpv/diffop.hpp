#pragma once

// Differential operators in s, t_0, t_1, ...: finite sums of
//   c * s^a * t^mu * d^nu
// with multiplications written to the left of derivatives.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpv/series.hpp"

namespace wpv {

/// Derivative multi-index; entry i is the order of d/dt_i. No trailing zeros.
using DerivIndex = std::vector<int>;

struct OpKey {
  Monomial mult;  // s^a t^mu
  DerivIndex deriv;

  friend bool operator==(const OpKey&, const OpKey&) = default;
};

struct OpKeyOrder {
  bool operator()(const OpKey& a, const OpKey& b) const;
};

class DiffOp {
 public:
  using TermMap = std::map<OpKey, Rational, OpKeyOrder>;

  DiffOp() = default;
  static DiffOp constant(const Rational& c);
  static DiffOp multiply(const Monomial& m, const Rational& c = 1);
  /// c * d/dt_i
  static DiffOp partial(int i, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Level k of V_k-type operators; used to locate the safe residual region.
  std::optional<int> level() const { return level_; }
  DiffOp& set_level(std::optional<int> k) {
    level_ = k;
    return *this;
  }

  void add_term(Monomial mult, DerivIndex deriv, const Rational& c);
  Rational coefficient(const Monomial& mult, const DerivIndex& deriv) const;

  /// Highest total derivative order (-1 for zero).
  int order() const;
  /// Largest t index used by any multiplier or derivative (-1 if none).
  int max_index() const;
  int max_s() const;

  /// Terms whose t indices are all <= max_index and whose s power is <= max_s.
  DiffOp restricted(int max_index, int max_s) const;
  DiffOp at_s_zero() const;
  /// Multiplies every term by s^a.
  DiffOp times_s(int a) const;

  /// Operator composition (this after other), with Leibniz reordering.
  DiffOp compose(const DiffOp& other) const;
  /// Wick product: multiplications of both factors moved left, no contractions.
  DiffOp normal_product(const DiffOp& other) const;

  Series apply(const Series& f) const;

  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  DiffOp& operator*=(const Rational& c);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rational& c) { return a *= c; }
  friend DiffOp operator*(const Rational& c, DiffOp a) { return a *= c; }
  /// Equality of term lists; the level tag is ignored.
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
  std::optional<int> level_;
};

DiffOp commutator(const DiffOp& a, const DiffOp& b);

std::string to_string(const DiffOp& op);

}  // namespace wpv
