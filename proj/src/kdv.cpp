#include "wpv/kdv.hpp"

#include <functional>
#include <stdexcept>

#include "wpv/numkit.hpp"

namespace wpv::kdv {

namespace {

// Count vectors c (c_i = multiplicity of tau_i) with sum c = n and sum i c_i = total.
void multisets(int n, int total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> c(static_cast<std::size_t>(total) + 1, 0);
  std::function<void(int, int, int)> walk = [&](int i, int left_n, int left_sum) {
    if (i == 0) {
      if (left_sum != 0) return;
      c[0] = left_n;
      visit(c);
      c[0] = 0;
      return;
    }
    for (int k = 0; k <= left_n && k * i <= left_sum; ++k) {
      c[static_cast<std::size_t>(i)] = k;
      walk(i - 1, left_n - k, left_sum - k * i);
    }
    c[static_cast<std::size_t>(i)] = 0;
  };
  walk(total, n, total);
}

std::vector<int> psi_of(const std::vector<int>& counts) {
  std::vector<int> psi;
  for (std::size_t i = counts.size(); i-- > 0;) psi.insert(psi.end(), static_cast<std::size_t>(counts[i]), static_cast<int>(i));
  return psi;
}

Rational inv_count_factorials(const std::vector<int>& counts) {
  BigInt den = 1;
  for (int c : counts) den *= factorial(c);
  return Rational(1) / Rational(den);
}

TSeries assemble(intersect::IntersectionEngine& engine, const Window& w, bool with_kappa) {
  TSeries out(w);
  for (const GenusN& cell : w.cells()) {
    const int dim = 3 * cell.g - 3 + cell.n;
    for (int m = 0; m <= (with_kappa ? dim : 0); ++m)
      multisets(cell.n, dim - m, [&](const std::vector<int>& counts) {
        auto key = intersect::BracketKey::make(cell.g, m, psi_of(counts));
        Rational b = engine.bracket(key);
        if (b == 0) return;
        Monomial mono(m, counts);
        mono.trim();
        out.add_term(mono, b * inv_count_factorials(counts) / Rational(factorial(m)));
      });
  }
  return out;
}

Series d0(const Series& s, int times) {
  Series out = s;
  for (int i = 0; i < times; ++i) out = out.derivative(0);
  return out;
}

struct FlowParts {
  Series d1u;   // d_1 u
  Series uux;   // u d_0 u
  Series u3;    // d_0^3 u
};

FlowParts flow_parts(const TSeries& F) {
  if (F.series().size() != F.at_s_zero().series().size()) throw std::invalid_argument("F must be s-free");
  const Series u = d0(F.series(), 2);
  const Series ux = u.derivative(0);
  return {u.derivative(1), u.mul(ux, F.window().n_max - 3), d0(u, 3)};
}

}  // namespace

TSeries assemble_F(intersect::IntersectionEngine& engine, const Window& w) { return assemble(engine, w, false); }

TSeries assemble_G(intersect::IntersectionEngine& engine, const Window& w) { return assemble(engine, w, true); }

std::map<int, Rational> canonical_shifts(int max_j) {
  std::map<int, Rational> out;
  for (int j = 2; j <= max_j; ++j) out[j] = numkit::gamma_shift_coeff(j);
  return out;
}

Window shift_source_window(const Window& w) { return Window(w.g_max, std::max(w.n_max, w.max_index() + w.n_max)); }

TSeries assemble_G_by_shift(const TSeries& F, const Window& out) {
  int top = 1;
  for (const auto& [m, c] : F.terms()) top = std::max(top, m.max_index());
  return shift_substitute(F, canonical_shifts(top), out);
}

bool kdv_safe(const Monomial& m, const Window& w) {
  if (m.s != 0) return true;
  const int three_g = m.weight() + 1;
  if (three_g < 0 || three_g % 3 != 0) return true;
  const int g = three_g / 3;
  const int n = m.n();
  return g <= w.g_max && n + 3 <= w.n_max && (g == 0 || n + 5 <= w.n_max);
}

Series kdv1_residual(const TSeries& F, const Rational& dispersion) {
  auto p = flow_parts(F);
  Series r = p.d1u - p.uux - p.u3 * dispersion;
  return r.filtered([&](const Monomial& m) { return kdv_safe(m, F.window()); });
}

std::vector<Monomial> kdv_checked_monomials(const TSeries& F) {
  auto p = flow_parts(F);
  std::map<Monomial, int, MonomialOrder> seen;
  for (const auto* part : {&p.d1u, &p.uux, &p.u3})
    for (const auto& [m, c] : part->terms())
      if (kdv_safe(m, F.window())) seen.emplace(m, 0);
  std::vector<Monomial> out;
  for (const auto& [m, unused] : seen) out.push_back(m);
  return out;
}

std::optional<Rational> fit_dispersion(const TSeries& F) {
  auto p = flow_parts(F);
  const Series lead = p.d1u - p.uux;
  for (const auto& [m, c] : p.u3.terms()) {
    if (!kdv_safe(m, F.window())) continue;
    return lead.coefficient(m) / c;
  }
  return std::nullopt;
}

TauPair make_tau_pair(intersect::IntersectionEngine& engine, const Window& w) {
  TauPair pair{assemble_F(engine, shift_source_window(w)), TSeries(w), {}};
  pair.G = assemble_G_by_shift(pair.F, w);
  int top = 1;
  for (const auto& [m, c] : pair.F.terms()) top = std::max(top, m.max_index());
  pair.shifts = canonical_shifts(top);
  return pair;
}

}  // namespace wpv::kdv
