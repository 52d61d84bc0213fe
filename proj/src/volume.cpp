#include "wpv/volume.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

#include "wpv/kernel.hpp"

namespace wpv::volume {

namespace {

using Exps = EvenPoly::Exponents;

// Splits v by the exponents of its first `ndist` variables; the remaining
// variables are relabelled through rest_map into a polynomial with nres variables.
std::map<std::vector<int>, EvenPoly> split_leading(const EvenPoly& v, int ndist, const std::vector<int>& rest_map,
                                                   int nres) {
  std::map<std::vector<int>, EvenPoly> out;
  for (const auto& [e, c] : v.terms()) {
    std::vector<int> lead(e.begin(), e.begin() + ndist);
    Exps ne(static_cast<std::size_t>(nres) + 1, 0);
    for (std::size_t i = 0; i < rest_map.size(); ++i)
      ne[static_cast<std::size_t>(rest_map[i])] += e[static_cast<std::size_t>(ndist) + i];
    auto [it, inserted] = out.try_emplace(lead, EvenPoly(nres));
    it->second.add_term(ne, c);
  }
  return out;
}

// integrand += scale * h_{2k+1}(t) * coeff
void add_h(TPoly& integrand, int k, const Rational& scale, const EvenPoly& coeff) {
  const auto h = kernel::h_closed(k);
  for (int p = 0; p <= h.degree(); ++p) {
    const Rational& hp = h.coeffs[static_cast<std::size_t>(p)];
    if (hp == 0) continue;
    integrand.add(p, coeff * (hp * scale));
  }
}

// integrand += scale * (h_{2k+1}(t + L_j) + h_{2k+1}(t - L_j)) * coeff, with
// L_j^2 = q at index var. Odd powers of L_j cancel between the two shifts.
void add_h_shifted(TPoly& integrand, int k, const Rational& scale, const EvenPoly& coeff, int var) {
  const auto h = kernel::h_closed(k);
  const int nv = coeff.nvars();
  for (int p = 0; p <= h.degree(); ++p) {
    const Rational& hp = h.coeffs[static_cast<std::size_t>(p)];
    if (hp == 0) continue;
    BigInt binom = 1;
    for (int r = 0; r <= p; ++r) {
      if (r > 0) binom = binom * (p - r + 1) / r;
      Rational c = hp * scale * Rational(binom) * (r % 2 == 0 ? 2 : 0);
      if (c == 0) continue;
      Exps e(static_cast<std::size_t>(nv) + 1, 0);
      e[static_cast<std::size_t>(var)] = r / 2;
      EvenPoly lj(nv);
      lj.add_term(e, 1);
      integrand.add(p - r, coeff * lj * c);
    }
  }
}

Rational odd_factorial(int a) { return Rational(factorial(2 * a + 1)); }

}  // namespace

VolKey::VolKey(int g_, int n_) : g(g_), n(n_) {
  if (g < 0) throw std::invalid_argument("genus must be nonnegative");
  if (n < 1) throw std::invalid_argument("need at least one boundary component (n >= 1)");
  if (2 * g - 2 + n <= 0)
    throw std::invalid_argument("unstable (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) +
                                "): need 2g - 2 + n > 0");
}

EvenPoly VolumeEngine::v_poly(const VolKey& key) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  EvenPoly value = compute(key);
  std::unique_lock lock(mutex_);
  return memo_.try_emplace(key, std::move(value)).first->second;
}

EvenPoly VolumeEngine::vol_poly(const VolKey& key) { return to_vol(v_poly(key), key.dim()); }

EvenPoly VolumeEngine::compute(const VolKey& key) {
  const int g = key.g, n = key.n;
  if (g == 0 && n == 3) return EvenPoly::constant(3, 1);
  if (g == 1 && n == 1) {
    EvenPoly v = EvenPoly::constant(1, 1) + EvenPoly::variable(1, 0);
    return v * make_rational(1, 24);
  }

  TPoly integrand{n, {}};

  // Non-separating: v_{g-1,n+1}(x, y, L_2..L_n).
  if (g >= 1) {
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i) rest[static_cast<std::size_t>(i)] = i + 1;
    auto parts = split_leading(v_poly(VolKey(g - 1, n + 1)), 2, rest, n);
    for (const auto& [ab, coeff] : parts) {
      Rational scale = 2 * odd_factorial(ab[0]) * odd_factorial(ab[1]);
      add_h(integrand, ab[0] + ab[1] + 1, scale, coeff);
    }
  }

  // Separating: ordered pairs (g1, I), (g - g1, J) with I + J = {2..n}.
  const int others = n - 1;
  for (int g1 = 0; g1 <= g; ++g1) {
    const int g2 = g - g1;
    for (unsigned mask = 0; mask < (1u << others); ++mask) {
      std::vector<int> left, right;
      for (int i = 0; i < others; ++i) ((mask >> i) & 1u ? left : right).push_back(i + 1);
      const int n1 = static_cast<int>(left.size()) + 1, n2 = static_cast<int>(right.size()) + 1;
      if (2 * g1 - 2 + n1 <= 0 || 2 * g2 - 2 + n2 <= 0) continue;
      auto p1 = split_leading(v_poly(VolKey(g1, n1)), 1, left, n);
      auto p2 = split_leading(v_poly(VolKey(g2, n2)), 1, right, n);
      for (const auto& [a, c1] : p1)
        for (const auto& [b, c2] : p2) {
          Rational scale = 2 * odd_factorial(a[0]) * odd_factorial(b[0]);
          add_h(integrand, a[0] + b[0] + 1, scale, c1 * c2);
        }
    }
  }

  // Boundary joining: v_{g,n-1}(x, L_{others except j}).
  if (n >= 2) {
    auto base = v_poly(VolKey(g, n - 1));
    for (int j = 1; j < n; ++j) {
      std::vector<int> rest;
      for (int i = 1; i < n; ++i)
        if (i != j) rest.push_back(i);
      auto parts = split_leading(base, 1, rest, n);
      for (const auto& [a, coeff] : parts) add_h_shifted(integrand, a[0], odd_factorial(a[0]), coeff, j);
    }
  }

  computed_.fetch_add(1);
  return avg_integrate(integrand, 0);
}

EvenPoly to_vol(const EvenPoly& v, int d) {
  EvenPoly out(v.nvars());
  for (const auto& [e, c] : v.terms()) {
    if (e.back() != 0) throw std::invalid_argument("to_vol expects a P-free polynomial");
    int deg = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) deg += e[i];
    if (deg > d) throw std::invalid_argument("to_vol: monomial degree exceeds dimension");
    auto ne = e;
    ne.back() = d - deg;
    BigInt num = BigInt(1) << d;
    BigInt den = BigInt(1) << (2 * deg);
    out.add_term(ne, c * Rational(num) / Rational(den));
  }
  return out;
}

std::vector<VolumeRow> volume_table(VolumeEngine& engine, int d_max) {
  if (d_max < 0) throw std::invalid_argument("d_max must be nonnegative");
  std::vector<VolumeRow> rows;
  for (int d = 0; d <= d_max; ++d)
    for (int g = 0; 3 * g - 3 < d; ++g) {
      const int n = d - 3 * g + 3;
      if (n < 1 || 2 * g - 2 + n <= 0) continue;
      VolKey key(g, n);
      rows.push_back({key, engine.v_poly(key), engine.vol_poly(key)});
    }
  return rows;
}

}  // namespace wpv::volume
