#include "wpv/diffop.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace wpv {

namespace {

void trim(DerivIndex& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

int at(const std::vector<int>& v, std::size_t i) { return i < v.size() ? v[i] : 0; }

DerivIndex add(const DerivIndex& a, const DerivIndex& b) {
  DerivIndex out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(a, i) + at(b, i);
  trim(out);
  return out;
}

BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// d^mu (t^m) = factor * t^(m - mu), or nullopt when it vanishes.
std::optional<std::pair<Monomial, BigInt>> differentiate(const Monomial& m, const DerivIndex& mu) {
  Monomial out = m;
  BigInt factor = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0) continue;
    int e = at(m.t, i);
    if (e < mu[i]) return std::nullopt;
    for (int r = 0; r < mu[i]; ++r) factor *= e - r;
    out.t[i] = e - mu[i];
  }
  out.trim();
  return std::make_pair(out, factor);
}

}  // namespace

bool OpKeyOrder::operator()(const OpKey& a, const OpKey& b) const {
  const int oa = std::accumulate(a.deriv.begin(), a.deriv.end(), 0);
  const int ob = std::accumulate(b.deriv.begin(), b.deriv.end(), 0);
  if (oa != ob) return oa < ob;
  if (a.deriv != b.deriv) return a.deriv < b.deriv;
  MonomialOrder mo;
  return mo(a.mult, b.mult);
}

DiffOp DiffOp::constant(const Rational& c) {
  DiffOp op;
  op.add_term(Monomial{}, {}, c);
  return op;
}

DiffOp DiffOp::multiply(const Monomial& m, const Rational& c) {
  DiffOp op;
  op.add_term(m, {}, c);
  return op;
}

DiffOp DiffOp::partial(int i, const Rational& c) {
  if (i < 0) throw std::invalid_argument("negative derivative index");
  DiffOp op;
  DerivIndex d(static_cast<std::size_t>(i) + 1, 0);
  d.back() = 1;
  op.add_term(Monomial{}, d, c);
  return op;
}

void DiffOp::add_term(Monomial mult, DerivIndex deriv, const Rational& c) {
  if (c == 0) return;
  mult.trim();
  trim(deriv);
  for (int d : deriv)
    if (d < 0) throw std::invalid_argument("negative derivative order");
  OpKey key{std::move(mult), std::move(deriv)};
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational DiffOp::coefficient(const Monomial& mult, const DerivIndex& deriv) const {
  OpKey key{mult, deriv};
  key.mult.trim();
  trim(key.deriv);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

int DiffOp::order() const {
  int best = -1;
  for (const auto& [key, c] : terms_)
    best = std::max(best, std::accumulate(key.deriv.begin(), key.deriv.end(), 0));
  return best;
}

int DiffOp::max_index() const {
  int best = -1;
  for (const auto& [key, c] : terms_)
    best = std::max({best, key.mult.max_index(), static_cast<int>(key.deriv.size()) - 1});
  return best;
}

int DiffOp::max_s() const {
  int best = 0;
  for (const auto& [key, c] : terms_) best = std::max(best, key.mult.s);
  return best;
}

DiffOp DiffOp::restricted(int max_index, int max_s) const {
  DiffOp out;
  out.level_ = level_;
  for (const auto& [key, c] : terms_) {
    if (key.mult.s > max_s) continue;
    if (key.mult.max_index() > max_index || static_cast<int>(key.deriv.size()) - 1 > max_index) continue;
    out.terms_.emplace(key, c);
  }
  return out;
}

DiffOp DiffOp::at_s_zero() const { return restricted(max_index(), 0); }

DiffOp DiffOp::times_s(int a) const {
  if (a < 0) throw std::invalid_argument("negative power of s");
  DiffOp out;
  out.level_ = level_;
  for (const auto& [key, c] : terms_) {
    Monomial m = key.mult;
    m.s += a;
    out.terms_.emplace(OpKey{m, key.deriv}, c);
  }
  return out;
}

DiffOp DiffOp::compose(const DiffOp& other) const {
  DiffOp out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : other.terms_) {
      // d^nu (t^m f) = sum_{mu <= nu} C(nu, mu) d^mu(t^m) d^(nu - mu) f
      DerivIndex mu(ka.deriv.size(), 0);
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i < mu.size()) {
          for (mu[i] = 0; mu[i] <= ka.deriv[i]; ++mu[i]) walk(i + 1);
          return;
        }
        auto dm = differentiate(kb.mult, mu);
        if (!dm) return;
        BigInt mult = dm->second;
        DerivIndex rest(ka.deriv.size(), 0);
        for (std::size_t j = 0; j < mu.size(); ++j) {
          mult *= binomial(ka.deriv[j], mu[j]);
          rest[j] = ka.deriv[j] - mu[j];
        }
        out.add_term(ka.mult * dm->first, add(rest, kb.deriv), ca * cb * Rational(mult));
      };
      walk(0);
    }
  return out;
}

DiffOp DiffOp::normal_product(const DiffOp& other) const {
  DiffOp out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : other.terms_) out.add_term(ka.mult * kb.mult, add(ka.deriv, kb.deriv), ca * cb);
  return out;
}

Series DiffOp::apply(const Series& f) const {
  Series out;
  std::map<DerivIndex, Series> cache;
  for (const auto& [key, c] : terms_) {
    auto it = cache.find(key.deriv);
    if (it == cache.end()) {
      Series d = f;
      for (std::size_t i = 0; i < key.deriv.size(); ++i)
        for (int r = 0; r < key.deriv[i]; ++r) d = d.derivative(static_cast<int>(i));
      it = cache.emplace(key.deriv, std::move(d)).first;
    }
    out += it->second.mul_monomial(key.mult, c);
  }
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.mult, key.deriv, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.mult, key.deriv, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return a.compose(b) - b.compose(a); }

std::string to_string(const DiffOp& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : op.terms()) {
    std::string term = wpv::to_string(c);
    if (!key.mult.is_one()) term += "*" + to_string(key.mult);
    for (std::size_t i = 0; i < key.deriv.size(); ++i)
      for (int r = 0; r < key.deriv[i]; ++r) term += "*d" + std::to_string(i);
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace wpv
