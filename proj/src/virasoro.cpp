#include "wpv/virasoro.hpp"

#include <functional>
#include <stdexcept>
#include <string>

#include "wpv/numkit.hpp"

namespace wpv::virasoro {

namespace {

Rational dfact(int n) { return Rational(numkit::double_factorial(n)); }

Monomial st(int s, int index = -1, int power = 1) {
  Monomial m;
  m.s = s;
  if (index >= 0) {
    m.t.assign(static_cast<std::size_t>(index) + 1, 0);
    m.t.back() = power;
  }
  return m;
}

DerivIndex d1(int a) {
  DerivIndex d(static_cast<std::size_t>(a) + 1, 0);
  d.back() = 1;
  return d;
}

DerivIndex d2(int a, int b) {
  DerivIndex d(static_cast<std::size_t>(std::max(a, b)) + 1, 0);
  ++d[static_cast<std::size_t>(a)];
  ++d[static_cast<std::size_t>(b)];
  return d;
}

// Indices of the derivative multi-index, with repetition.
std::vector<int> deriv_list(const DerivIndex& d) {
  std::vector<int> out;
  for (std::size_t i = 0; i < d.size(); ++i) out.insert(out.end(), static_cast<std::size_t>(d[i]), static_cast<int>(i));
  return out;
}

void check_level(int k) {
  if (k < -1) throw std::invalid_argument("operator index must be >= -1, got " + std::to_string(k));
}

void check_f(const Series& f) {
  if (f.coefficient(Monomial{}) != 0) throw std::invalid_argument("series has a constant term");
}

// Coefficient of p in d/dt_a1 ... d/dt_ar f.
Rational deriv_coefficient(const Series& f, const Monomial& p, const std::vector<int>& idx) {
  Monomial q = p;
  for (int a : idx) q = q * st(0, a);
  Rational c = f.coefficient(q);
  if (c == 0) return 0;
  Monomial cur = q;
  for (int a : idx) {
    c *= cur.t_exp(a);
    cur.t[static_cast<std::size_t>(a)] -= 1;
  }
  return c;
}

// Calls visit(p) for every monomial p dividing m.
void for_each_divisor(const Monomial& m, const std::function<void(const Monomial&)>& visit) {
  Monomial p;
  p.t.assign(m.t.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == m.t.size()) {
      Monomial q = p;
      q.trim();
      visit(q);
      return;
    }
    for (p.t[i] = 0; p.t[i] <= m.t[i]; ++p.t[i]) walk(i + 1);
  };
  for (p.s = 0; p.s <= m.s; ++p.s) walk(0);
}

// Count vectors c with sum c = n and sum i c_i = total.
void multisets(int n, int total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> c(static_cast<std::size_t>(total) + 1, 0);
  std::function<void(int, int, int)> walk = [&](int i, int left_n, int left_sum) {
    if (i < 0) {
      if (left_n == 0 && left_sum == 0) visit(c);
      return;
    }
    if (i == 0) {
      c[0] = left_n;
      if (left_sum == 0) visit(c);
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

}  // namespace

Truncation truncation_for(const Window& w) {
  const int d = std::max(w.max_index(), 0);
  return {d, d};
}

DiffOp build_Vhat(int k, const Truncation& tr) {
  check_level(k);
  const int D = tr.max_index, S = tr.max_s;
  DiffOp op;
  if (k + 1 <= D) op.add_term(Monomial{}, d1(k + 1), -dfact(2 * k + 3) / 2);
  if (k == -1) {
    op.add_term(st(0, 0, 2), {}, make_rational(1, 4));
    if (S >= 1) op.add_term(st(1), {}, make_rational(1, 48));
  }
  if (k == 0) op.add_term(Monomial{}, {}, make_rational(1, 16));
  for (int i = 0; i <= S; ++i) {
    const Rational b = numkit::beta_coeff(i);
    for (int j = 0; j <= D; ++j) {
      const int a = i + j + k;
      if (a < 0 || a > D) continue;
      op.add_term(st(i, j), d1(a), b * dfact(2 * a + 1) / dfact(2 * j - 1) / 2);
    }
    const int total = i + k - 1;
    for (int a = 0; a <= total; ++a) {
      const int c = total - a;
      if (a > D || c > D) continue;
      op.add_term(st(i), d2(a, c), b * dfact(2 * a + 1) * dfact(2 * c + 1) / 4);
    }
  }
  op.set_level(k);
  return op;
}

DiffOp build_V(int k, const Truncation& tr) {
  check_level(k);
  DiffOp op;
  for (int i = 0; i <= tr.max_s; ++i) op += build_Vhat(k + i, tr).times_s(i) * numkit::alpha_coeff(i);
  op = op.restricted(tr.max_index, tr.max_s);
  op.set_level(k);
  return op;
}

DiffOp build_L(int k, const Truncation& tr) {
  check_level(k);
  const int D = tr.max_index;
  DiffOp op;
  if (k + 1 <= D) op.add_term(Monomial{}, d1(k + 1), -dfact(2 * k + 3) / 2);
  for (int j = 0; j <= D; ++j) {
    const int a = j + k;
    if (a < 0 || a > D) continue;
    op.add_term(st(0, j), d1(a), dfact(2 * a + 1) / dfact(2 * j - 1) / 2);
  }
  for (int a = 0; a <= k - 1; ++a) {
    const int c = k - 1 - a;
    if (a > D || c > D) continue;
    op.add_term(Monomial{}, d2(a, c), dfact(2 * a + 1) * dfact(2 * c + 1) / 4);
  }
  if (k == -1) op.add_term(st(0, 0, 2), {}, make_rational(1, 4));
  if (k == 0) op.add_term(Monomial{}, {}, make_rational(1, 16));
  op.set_level(k);
  return op;
}

DiffOp build_J(int p, const Truncation& tr) {
  if (p % 2 == 0) throw std::invalid_argument("J_p needs odd p, got " + std::to_string(p));
  const int q = p > 0 ? p : -p;
  const int i = (q - 1) / 2;
  DiffOp op;
  if (i > tr.max_index) return op;
  // T_q = t_i / q!!
  if (p > 0)
    op.add_term(Monomial{}, d1(i), dfact(q));
  else
    op.add_term(st(0, i), {}, Rational(q) / dfact(q));
  return op;
}

DiffOp build_E(int k, const Truncation& tr) {
  const int top = 2 * tr.max_index + 1;
  DiffOp op;
  for (int a = -top; a <= top; a += 2) {
    const int b = 2 * k - a;
    if (b < -top || b > top) continue;
    op += build_J(a, tr).normal_product(build_J(b, tr));
  }
  op *= make_rational(1, 4);
  if (k == 0) op += DiffOp::constant(make_rational(1, 16));
  op.set_level(k);
  return op;
}

Series apply_to_exp(const DiffOp& op, const Series& f, int n_max) {
  check_f(f);
  std::map<int, Series> first;
  auto df = [&](int a) -> const Series& {
    auto it = first.find(a);
    if (it == first.end()) it = first.emplace(a, f.derivative(a)).first;
    return it->second;
  };
  // d_a d_b f + d_a f d_b f, cut at n_max and cached per (a, b).
  std::map<std::pair<int, int>, Series> second;
  auto dd = [&](int a, int b) -> const Series& {
    auto it = second.find({a, b});
    if (it == second.end()) {
      Series s = df(a).derivative(b) + df(a).mul(df(b), n_max);
      if (n_max >= 0) s = s.filtered([n_max](const Monomial& m) { return m.n() <= n_max; });
      it = second.emplace(std::make_pair(a, b), std::move(s)).first;
    }
    return it->second;
  };

  Series out;
  for (const auto& [key, c] : op.terms()) {
    const int budget = n_max < 0 ? -1 : n_max - key.mult.n();
    if (n_max >= 0 && budget < 0) continue;
    const auto idx = deriv_list(key.deriv);
    switch (idx.size()) {
      case 0:
        out.add_term(key.mult, c);
        break;
      case 1: {
        Series s = df(idx[0]);
        if (budget >= 0) s = s.filtered([budget](const Monomial& m) { return m.n() <= budget; });
        out += s.mul_monomial(key.mult, c);
        break;
      }
      case 2: {
        Series s = dd(idx[0], idx[1]);
        if (budget >= 0) s = s.filtered([budget](const Monomial& m) { return m.n() <= budget; });
        out += s.mul_monomial(key.mult, c);
        break;
      }
      default:
        throw std::domain_error("apply_to_exp supports operators of order <= 2");
    }
  }
  return out;
}

Rational residual_coefficient(const DiffOp& op, const Series& f, const Monomial& m) {
  check_f(f);
  Rational total = 0;
  for (const auto& [key, c] : op.terms()) {
    auto q = m.divide(key.mult);
    if (!q) continue;
    const auto idx = deriv_list(key.deriv);
    switch (idx.size()) {
      case 0:
        if (q->is_one()) total += c;
        break;
      case 1:
        total += c * deriv_coefficient(f, *q, idx);
        break;
      case 2: {
        Rational acc = deriv_coefficient(f, *q, idx);
        for_each_divisor(*q, [&](const Monomial& p) {
          Rational a = deriv_coefficient(f, p, {idx[0]});
          if (a == 0) return;
          acc += a * deriv_coefficient(f, *q->divide(p), {idx[1]});
        });
        total += c * acc;
        break;
      }
      default:
        throw std::domain_error("residual_coefficient supports operators of order <= 2");
    }
  }
  return total;
}

bool residual_safe(const Monomial& m, int level, const Window& w) {
  const int n = m.n() + 1;
  const int three_g = m.weight() + level + 3;
  if (three_g < 0 || three_g % 3 != 0) return true;
  const int g = three_g / 3;
  return g <= w.g_max && n <= w.n_max && (g == 0 || n + 1 <= w.n_max);
}

Series constraint_residual(const DiffOp& op, const TSeries& f) {
  if (!op.level()) throw std::invalid_argument("constraint_residual needs an operator with a level");
  const int k = *op.level();
  const Window& w = f.window();
  Series raw = apply_to_exp(op, f.series(), w.n_max - 1);
  return raw.filtered([&](const Monomial& m) { return residual_safe(m, k, w); });
}

TSeries solve_series_from_constraints(Family family, const Window& w) {
  const Truncation tr = truncation_for(w);
  std::map<int, DiffOp> ops;
  auto op_for = [&](int k) -> const DiffOp& {
    auto it = ops.find(k);
    if (it == ops.end()) it = ops.emplace(k, family == Family::L ? build_L(k, tr) : build_Vhat(k, tr)).first;
    return it->second;
  };

  // A target at (g, n) also needs (g - 1, n + 1), so the solve runs over the
  // region n <= N + G - g and is cut back to the window at the end.
  const Window region(w.g_max, w.n_max + w.g_max);
  TSeries f(region);
  for (const GenusN& cell : region.cells()) {
    if (cell.n > w.n_max + w.g_max - cell.g) continue;
    const int dim = 3 * cell.g - 3 + cell.n;
    const int kappa_max = family == Family::L ? 0 : dim;
    for (int k0 = 0; k0 <= kappa_max; ++k0)
      multisets(cell.n, dim - k0, [&](const std::vector<int>& counts) {
        Monomial target(k0, counts);
        target.trim();
        const int d = std::max(target.max_index(), 0);
        const int k = d - 1;
        const int e = target.t_exp(d);
        const Monomial m = *target.divide(st(0, d));
        const Rational r = residual_coefficient(op_for(k), f.series(), m);
        // -((2k+3)!!/2) e c + r = 0
        const Rational lead = dfact(2 * k + 3) * e / 2;
        if (lead == 0)
          throw std::runtime_error("constraint does not determine the coefficient of " + to_string(target));
        f.add_term(target, r / lead);
      });
  }
  TSeries out(w);
  for (const auto& [m, c] : f.terms())
    if (out.admits(m)) out.add_term(m, c);
  return out;
}

}  // namespace wpv::virasoro
