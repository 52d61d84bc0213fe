#include "wpv/series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wpv {

Monomial::Monomial(int s_pow, std::vector<int> t_exps) : s(s_pow), t(std::move(t_exps)) {
  if (s < 0) throw std::invalid_argument("negative s exponent");
  for (int e : t)
    if (e < 0) throw std::invalid_argument("negative t exponent");
  trim();
}

void Monomial::trim() {
  while (!t.empty() && t.back() == 0) t.pop_back();
}

int Monomial::n() const { return std::accumulate(t.begin(), t.end(), 0); }

int Monomial::weight() const {
  int w = s;
  for (std::size_t i = 0; i < t.size(); ++i) w += (static_cast<int>(i) - 1) * t[i];
  return w;
}

int Monomial::t_exp(int i) const {
  return (i >= 0 && static_cast<std::size_t>(i) < t.size()) ? t[static_cast<std::size_t>(i)] : 0;
}

int Monomial::max_index() const { return static_cast<int>(t.size()) - 1; }

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.s = s + other.s;
  out.t.assign(std::max(t.size(), other.t.size()), 0);
  for (std::size_t i = 0; i < t.size(); ++i) out.t[i] += t[i];
  for (std::size_t i = 0; i < other.t.size(); ++i) out.t[i] += other.t[i];
  return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& other) const {
  if (other.s > s || other.t.size() > t.size()) return std::nullopt;
  Monomial out = *this;
  out.s -= other.s;
  for (std::size_t i = 0; i < other.t.size(); ++i) {
    if (other.t[i] > t[i]) return std::nullopt;
    out.t[i] -= other.t[i];
  }
  out.trim();
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.s + a.n(), db = b.s + b.n();
  if (da != db) return da < db;
  if (a.s != b.s) return a.s > b.s;
  // Descending lex on the zero-padded t vector.
  std::size_t len = std::max(a.t.size(), b.t.size());
  for (std::size_t i = 0; i < len; ++i) {
    int x = i < a.t.size() ? a.t[i] : 0;
    int y = i < b.t.size() ? b.t[i] : 0;
    if (x != y) return x > y;
  }
  return false;
}

std::string to_string(const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& name, int p) {
    if (p == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (p > 1) out += "^" + std::to_string(p);
  };
  append("s", m.s);
  for (std::size_t i = 0; i < m.t.size(); ++i) append("t" + std::to_string(i), m.t[i]);
  return out.empty() ? "1" : out;
}

std::optional<GenusN> genus_label(const Monomial& m) {
  int n = m.n();
  if (n == 0) return std::nullopt;
  int three_g = 3 + m.weight();
  if (three_g < 0 || three_g % 3 != 0) return std::nullopt;
  GenusN gn{three_g / 3, n};
  if (2 * gn.g - 2 + gn.n <= 0) return std::nullopt;
  return gn;
}

Window::Window(int g, int n) : g_max(g), n_max(n) {
  if (g < 0 || n < 1) throw std::invalid_argument("window needs g_max >= 0 and n_max >= 1");
}

std::vector<GenusN> Window::cells() const {
  std::vector<GenusN> out;
  for (int g = 0; g <= g_max; ++g)
    for (int n = 1; n <= n_max; ++n)
      if (2 * g - 2 + n > 0) out.push_back({g, n});
  std::stable_sort(out.begin(), out.end(), [](GenusN a, GenusN b) {
    int da = 3 * a.g - 3 + a.n, db = 3 * b.g - 3 + b.n;
    return da != db ? da < db : a.g < b.g;
  });
  return out;
}

Series Series::constant(const Rational& c) { return monomial(Monomial{}, c); }

Series Series::monomial(const Monomial& m, const Rational& c) {
  Series out;
  out.add_term(m, c);
  return out;
}

void Series::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Series::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Series Series::derivative(int index) const {
  Series out;
  for (const auto& [m, c] : terms_) {
    int e = m.t_exp(index);
    if (e == 0) continue;
    Monomial d = m;
    d.t[static_cast<std::size_t>(index)] -= 1;
    d.trim();
    out.add_term(d, c * e);
  }
  return out;
}

Series Series::mul_monomial(const Monomial& m, const Rational& c) const {
  Series out;
  if (c == 0) return out;
  for (const auto& [x, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), x * m, v * c);
  return out;
}

Series Series::mul(const Series& other, int n_max) const {
  Series out;
  for (const auto& [a, ca] : terms_) {
    int na = a.n();
    if (n_max >= 0 && na > n_max) continue;
    for (const auto& [b, cb] : other.terms_) {
      if (n_max >= 0 && na + b.n() > n_max) continue;
      out.add_term(a * b, ca * cb);
    }
  }
  return out;
}

Series Series::filtered(const std::function<bool(const Monomial&)>& keep) const {
  Series out;
  for (const auto& [m, c] : terms_)
    if (keep(m)) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Series Series::at_s_zero() const {
  return filtered([](const Monomial& m) { return m.s == 0; });
}

Series& Series::operator+=(const Series& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string to_string(const Series& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    Rational a = abs(c);
    std::string body = m.is_one() ? to_string(a) : (a == 1 ? to_string(m) : to_string(a) + "*" + to_string(m));
    if (first)
      out += c < 0 ? "-" + body : body;
    else
      out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

TSeries::TSeries(Window window) : window_(window) {}

bool TSeries::admits(const Monomial& m) const {
  auto gn = genus_label(m);
  return gn && window_.contains(*gn);
}

void TSeries::add_term(const Monomial& m, const Rational& c) {
  if (!admits(m))
    throw std::invalid_argument("monomial " + to_string(m) + " has no (g,n) label inside the window");
  series_.add_term(m, c);
}

Rational TSeries::coefficient(const Monomial& m) const {
  if (!admits(m)) throw std::invalid_argument("monomial " + to_string(m) + " is not a window monomial");
  return series_.coefficient(m);
}

TSeries TSeries::at_s_zero() const {
  TSeries out(window_);
  out.series_ = series_.at_s_zero();
  return out;
}

Series series_exp(const Series& f, int n_max) {
  if (n_max < 0) throw std::invalid_argument("series_exp needs a nonnegative n bound");
  for (const auto& [m, c] : f.terms())
    if (m.n() == 0)
      throw std::invalid_argument(m.is_one() ? "series_exp: nonzero constant term"
                                             : "series_exp: pure s monomial cannot be truncated by n");
  Series result = Series::constant(1);
  Series power = Series::constant(1);
  // Each factor carries at least one t, so f^k vanishes beyond k = n_max.
  for (int k = 1; k <= n_max; ++k) {
    power = power.mul(f, n_max) * make_rational(1, k);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

Series series_exp(const TSeries& f) { return series_exp(f.series(), f.window().n_max); }

namespace {

void expand_shifts(const Monomial& base, const Rational& coeff, const std::vector<std::pair<int, Rational>>& shifts,
                   std::size_t pos, const Window& out, TSeries& dest) {
  if (pos == shifts.size()) {
    if (base.n() <= out.n_max && base.n() >= 1) {
      auto gn = genus_label(base);
      if (gn && out.contains(*gn)) dest.add_term(base, coeff);
    }
    return;
  }
  auto [j, c] = shifts[pos];
  int nj = base.t_exp(j);
  if (nj == 0 || c == 0) {
    expand_shifts(base, coeff, shifts, pos + 1, out, dest);
    return;
  }
  // (t_j + c s^{j-1})^{nj} = sum_r binomial(nj, r) c^r s^{r(j-1)} t_j^{nj-r}
  BigInt binom = 1;
  Rational cpow = 1;
  for (int r = 0; r <= nj; ++r) {
    Monomial next = base;
    next.t[static_cast<std::size_t>(j)] -= r;
    next.s += r * (j - 1);
    next.trim();
    expand_shifts(next, coeff * Rational(binom) * cpow, shifts, pos + 1, out, dest);
    binom = binom * (nj - r) / (r + 1);
    cpow *= c;
  }
}

}  // namespace

TSeries shift_substitute(const TSeries& f, const std::map<int, Rational>& shifts, const Window& out) {
  std::vector<std::pair<int, Rational>> list;
  for (const auto& [j, c] : shifts) {
    if (j < 2) throw std::invalid_argument("t_0 and t_1 are never shifted (got j=" + std::to_string(j) + ")");
    list.emplace_back(j, c);
  }
  TSeries dest(out);
  for (const auto& [m, c] : f.terms()) {
    // The shift preserves g, so whole monomials can be skipped early.
    auto gn = genus_label(m);
    if (!gn || gn->g > out.g_max) continue;
    expand_shifts(m, c, list, 0, out, dest);
  }
  return dest;
}

}  // namespace wpv
