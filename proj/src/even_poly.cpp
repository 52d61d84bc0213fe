#include "wpv/even_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wpv {

namespace {

int degree_of(const EvenPoly::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::string monomial_text(const EvenPoly::Exponents& e) {
  std::string out;
  const int n = static_cast<int>(e.size()) - 1;
  auto append = [&](const std::string& name, int power) {
    if (power == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (power > 1) out += "^" + std::to_string(power);
  };
  for (int i = 0; i < n; ++i) append("q" + std::to_string(i + 1), e[static_cast<std::size_t>(i)]);
  append("P", e.back());
  return out;
}

std::string monomial_latex(const EvenPoly::Exponents& e) {
  std::string out;
  const int n = static_cast<int>(e.size()) - 1;
  for (int i = 0; i < n; ++i) {
    int p = e[static_cast<std::size_t>(i)];
    if (p > 0) out += "L_{" + std::to_string(i + 1) + "}^{" + std::to_string(2 * p) + "}";
  }
  if (e.back() > 0) out += "\\pi^{" + std::to_string(2 * e.back()) + "}";
  return out;
}

BigInt common_denominator(const EvenPoly& p) {
  BigInt lcm = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  return lcm;
}

// Joins integer-coefficient terms as "a + b - c".
template <typename MonoFn>
std::string join_terms(const EvenPoly& p, const BigInt& scale, MonoFn mono, const char* times) {
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational scaled = c * Rational(scale);
    BigInt z = scaled.get_num();
    bool negative = z < 0;
    if (negative) z = -z;
    std::string m = mono(e);
    std::string body;
    if (m.empty())
      body = z.get_str();
    else if (z == 1)
      body = m;
    else
      body = z.get_str() + times + m;
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace

bool EvenPoly::GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  int da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  return a > b;
}

EvenPoly::EvenPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw std::invalid_argument("negative variable count");
}

EvenPoly EvenPoly::constant(int nvars, const Rational& c) {
  EvenPoly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars) + 1, 0), c);
  return p;
}

EvenPoly EvenPoly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw std::out_of_range("variable index out of range");
  EvenPoly p(nvars);
  Exponents e(static_cast<std::size_t>(nvars) + 1, 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, 1);
  return p;
}

EvenPoly EvenPoly::pi_squared(int nvars) {
  EvenPoly p(nvars);
  Exponents e(static_cast<std::size_t>(nvars) + 1, 0);
  e.back() = 1;
  p.add_term(e, 1);
  return p;
}

void EvenPoly::check_shape(const Exponents& exps) const {
  if (exps.size() != static_cast<std::size_t>(nvars_) + 1)
    throw std::invalid_argument("exponent vector has wrong length");
  for (int x : exps)
    if (x < 0) throw std::invalid_argument("negative exponent");
}

void EvenPoly::add_term(const Exponents& exps, const Rational& c) {
  if (c == 0) return;
  check_shape(exps);
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational EvenPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational EvenPoly::constant_term() const {
  return coefficient(Exponents(static_cast<std::size_t>(nvars_) + 1, 0));
}

int EvenPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return degree_of(terms_.rbegin()->first);
}

bool EvenPoly::has_pi() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.back() > 0; });
}

EvenPoly EvenPoly::embed(int new_nvars, std::span<const int> var_map) const {
  if (var_map.size() != static_cast<std::size_t>(nvars_))
    throw std::invalid_argument("embed: map size does not match variable count");
  EvenPoly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(static_cast<std::size_t>(new_nvars) + 1, 0);
    for (int i = 0; i < nvars_; ++i) ne.at(static_cast<std::size_t>(var_map[static_cast<std::size_t>(i)])) += e[static_cast<std::size_t>(i)];
    ne.back() = e.back();
    out.add_term(ne, c);
  }
  return out;
}

bool EvenPoly::is_symmetric() const {
  // Adjacent transpositions generate the symmetric group.
  for (int i = 0; i + 1 < nvars_; ++i) {
    std::vector<int> perm(static_cast<std::size_t>(nvars_));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
    if (!(embed(nvars_, perm) == *this)) return false;
  }
  return true;
}

EvenPoly& EvenPoly::operator+=(const EvenPoly& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("EvenPoly variable sets differ");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

EvenPoly& EvenPoly::operator-=(const EvenPoly& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("EvenPoly variable sets differ");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

EvenPoly& EvenPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

EvenPoly operator*(const EvenPoly& a, const EvenPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("EvenPoly variable sets differ");
  EvenPoly out(a.nvars_);
  EvenPoly::Exponents e(a.nvars_ + 1);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

void TPoly::add(int power, const EvenPoly& coeff) {
  if (coeff.nvars() != nvars) throw std::invalid_argument("TPoly coefficient has wrong variable count");
  auto [it, inserted] = by_power.try_emplace(power, coeff);
  if (!inserted) it->second += coeff;
  if (it->second.is_zero()) by_power.erase(it);
}

EvenPoly avg_integrate(const TPoly& p, int target) {
  if (target < 0 || target >= p.nvars) throw std::out_of_range("avg_integrate target variable out of range");
  EvenPoly out(p.nvars);
  for (const auto& [k, coeff] : p.by_power) {
    if (coeff.is_zero()) continue;
    if (k < 0) throw std::domain_error("negative power of t");
    if (k % 2 != 0)
      throw std::domain_error("odd power t^" + std::to_string(k) + " survives assembly");
    EvenPoly lifted(p.nvars);
    for (const auto& [e, c] : coeff.terms()) {
      auto ne = e;
      ne[static_cast<std::size_t>(target)] += k / 2;
      lifted.add_term(ne, c / (k + 1));
    }
    out += lifted;
  }
  return out;
}

std::string to_text(const EvenPoly& p) {
  if (p.is_zero()) return "0";
  BigInt den = common_denominator(p);
  std::string body = join_terms(p, den, monomial_text, "*");
  if (den == 1) return body;
  if (p.size() == 1) return body + "/" + den.get_str();
  return "(" + body + ")/" + den.get_str();
}

std::string to_latex(const EvenPoly& p) {
  if (p.is_zero()) return "0";
  BigInt den = common_denominator(p);
  std::string body = join_terms(p, den, monomial_latex, " ");
  if (den == 1) return body;
  return "\\frac{1}{" + den.get_str() + "}\\left(" + body + "\\right)";
}

std::string to_json(const EvenPoly& p) {
  nlohmann::ordered_json j;
  j["nvars"] = p.nvars();
  std::vector<std::string> names;
  for (int i = 0; i < p.nvars(); ++i) names.push_back("q" + std::to_string(i + 1));
  names.emplace_back("P");
  j["variables"] = names;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    nlohmann::ordered_json t;
    t["monomial"] = e;
    t["coeff"] = to_string(c);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j.dump();
}

}  // namespace wpv
