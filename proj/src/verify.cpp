#include "wpv/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "wpv/diffop.hpp"
#include "wpv/kdv.hpp"
#include "wpv/kernel.hpp"
#include "wpv/numkit.hpp"
#include "wpv/virasoro.hpp"

namespace wpv::verify {

namespace {

std::string window_text(int g, int n) { return "g<=" + std::to_string(g) + ",n<=" + std::to_string(n); }

std::string first_term(const Series& s) {
  if (s.is_zero()) return "-";
  const auto& [m, c] = *s.terms().begin();
  return to_string(m) + " -> " + to_string(c);
}

std::string first_difference(const EvenPoly& a, const EvenPoly& b) {
  EvenPoly d = a - b;
  if (d.is_zero()) return "-";
  const auto& [e, c] = *d.terms().begin();
  std::string m = "q^[";
  for (std::size_t i = 0; i + 1 < e.size(); ++i) m += (i ? "," : "") + std::to_string(e[i]);
  return m + "] differs by " + to_string(c);
}

std::string op_difference(const DiffOp& a, const DiffOp& b) {
  DiffOp d = a - b;
  if (d.is_zero()) return "-";
  DiffOp first;
  const auto& [key, c] = *d.terms().begin();
  first.add_term(key.mult, key.deriv, c);
  return to_string(first);
}

// Exponent tuples of length n with entries summing to at most d.
void tuples(int n, int d, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> walk = [&](int i, int left) {
    if (i == n) {
      visit(e);
      return;
    }
    for (e[static_cast<std::size_t>(i)] = 0; e[static_cast<std::size_t>(i)] <= left; ++e[static_cast<std::size_t>(i)])
      walk(i + 1, left - e[static_cast<std::size_t>(i)]);
    e[static_cast<std::size_t>(i)] = 0;
  };
  walk(0, d);
}

}  // namespace

bool all_ok(const std::vector<CheckRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.ok; });
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

EvenPoly v_from_brackets(intersect::IntersectionEngine& engine, const volume::VolKey& key, bool via_shift) {
  const int d = key.dim();
  EvenPoly out(key.n);
  tuples(key.n, d, [&](const std::vector<int>& e) {
    int used = 0;
    BigInt den = 1;
    for (int x : e) {
      used += x;
      den *= factorial(x);
    }
    const int d0 = d - used;
    den *= factorial(d0);
    Rational b = via_shift ? intersect::kappa_from_psi(engine, d0, e, key.g)
                           : engine.bracket(intersect::BracketKey::make(key.g, d0, e));
    if (b == 0) return;
    EvenPoly::Exponents ex(e.begin(), e.end());
    ex.push_back(0);
    out.add_term(ex, b / Rational(den));
  });
  return out;
}

std::vector<KernelRow> kernel_sweep(int kmax, double tol, double threshold, int jobs) {
  const double ts[] = {0.0, 0.5, 1.0, 2.0};
  std::vector<KernelRow> rows;
  for (int k = 0; k <= kmax; ++k)
    for (double t : ts) {
      KernelRow r;
      r.k = k;
      r.t = t;
      rows.push_back(r);
    }
  for (int s = 0; s <= kmax - 1; ++s)
    for (int i = 0; i <= s; ++i)
      for (double t : ts) {
        KernelRow r;
        r.is_double = true;
        r.i = i;
        r.j = s - i;
        r.t = t;
        rows.push_back(r);
      }
  parallel_for(rows.size(), jobs, [&](std::size_t idx) {
    KernelRow& r = rows[idx];
    auto rep = r.is_double ? kernel::quad_check_double(r.i, r.j, r.t, tol) : kernel::quad_check_single(r.k, r.t, tol);
    r.numeric = rep.numeric;
    r.exact = rep.exact;
    r.abs_err = rep.abs_err;
    r.panels = rep.panels_used;
    r.ok = rep.converged && rep.abs_err < threshold;
  });
  return rows;
}

std::vector<CheckRow> virasoro_suite(int gmax, int nmax, int kmax) {
  using namespace virasoro;
  const Window w(gmax, nmax);
  const Truncation tr = truncation_for(w);
  const Truncation wide{tr.max_index + 2, tr.max_s};
  const std::string wt = window_text(gmax, nmax);
  std::vector<CheckRow> rows;

  intersect::IntersectionEngine engine;
  const TSeries G = kdv::assemble_G(engine, w);
  const TSeries F = kdv::assemble_F(engine, w);

  for (int k = -1; k <= kmax; ++k) {
    Series r = constraint_residual(build_Vhat(k, tr), G);
    rows.push_back({"Vhat_" + std::to_string(k) + " exp(G) = 0", wt, r.is_zero(), first_term(r)});
  }
  for (int k = -1; k <= kmax; ++k) {
    Series r = constraint_residual(build_L(k, tr), F);
    rows.push_back({"L_" + std::to_string(k) + " exp(F) = 0", wt, r.is_zero(), first_term(r)});
  }
  for (int k = -1; k <= kmax; ++k) {
    DiffOp a = build_Vhat(k, tr).at_s_zero(), b = build_L(k, tr);
    rows.push_back({"Vhat_" + std::to_string(k) + "|s=0 = L_" + std::to_string(k), wt, a == b, op_difference(a, b)});
  }

  const int top = std::min(3, kmax);
  std::map<int, DiffOp> V, Vh;
  for (int k = -1; k <= top; ++k) {
    V[k] = build_V(k, wide);
    Vh[k] = build_Vhat(k, wide);
  }
  for (int n = -1; n <= top; ++n)
    for (int m = -1; m <= top; ++m) {
      if (n == m) continue;
      const std::string nm = std::to_string(n) + "," + std::to_string(m);
      DiffOp lhs = commutator(V[n], V[m]).restricted(tr.max_index, tr.max_s);
      DiffOp rhs = build_V(n + m, tr) * Rational(n - m);
      rows.push_back({"[V_" + std::to_string(n) + ",V_" + std::to_string(m) + "] = (n-m) V_{n+m}", wt, lhs == rhs,
                      op_difference(lhs, rhs)});
      DiffOp hl = commutator(Vh[n], Vh[m]).restricted(tr.max_index, tr.max_s);
      DiffOp hr;
      for (int i = 0; i <= tr.max_s; ++i)
        if (n + m + i >= -1) hr += build_Vhat(n + m + i, tr).times_s(i) * (numkit::beta_coeff(i) * (n - m));
      hr = hr.restricted(tr.max_index, tr.max_s);
      rows.push_back({"[Vhat_" + std::to_string(n) + ",Vhat_" + std::to_string(m) +
                          "] = (n-m) sum beta_i s^i Vhat_{n+m+i}",
                      wt, hl == hr, op_difference(hl, hr)});
    }

  for (int k = -1; k <= top; ++k) {
    DiffOp rhs = build_J(2 * k + 3, tr) * make_rational(-1, 2);
    for (int i = 0; i <= tr.max_s; ++i) rhs += build_E(k + i, tr).times_s(i) * numkit::beta_coeff(i);
    rhs = rhs.restricted(tr.max_index, tr.max_s);
    DiffOp lhs = build_Vhat(k, tr);
    rows.push_back({"Vhat_" + std::to_string(k) + " = -1/2 J_" + std::to_string(2 * k + 3) + " + sum beta_i s^i E_{k+i}",
                    wt, lhs == rhs, op_difference(lhs, rhs)});
  }

  auto solve_row = [&](Family fam, const TSeries& want, const std::string& name) {
    TSeries got = solve_series_from_constraints(fam, w);
    Series d = got.series() - want.series();
    rows.push_back({name, wt, d.is_zero(), first_term(d)});
  };
  solve_row(Family::L, F, "L-constraints alone determine F");
  solve_row(Family::Vhat, G, "Vhat-constraints alone determine G");
  return rows;
}

std::vector<CheckRow> kdv_suite(intersect::IntersectionEngine& engine, int gmax, int nmax,
                                std::vector<std::string>* checked) {
  std::vector<CheckRow> rows;
  const Window flow_window(gmax, nmax + 5);
  const TSeries F = kdv::assemble_F(engine, flow_window);
  Series r = kdv::kdv1_residual(F);
  std::string detail = first_term(r);
  if (!r.is_zero()) {
    auto c = kdv::fit_dispersion(F);
    detail += c ? "; lowest-order fit of the dispersion constant: " + to_string(*c) : "; no dispersion fit";
  }
  const auto monos = kdv::kdv_checked_monomials(F);
  if (checked)
    for (const auto& m : monos) checked->push_back(to_string(m));
  rows.push_back({"d1 u = u d0 u + (1/12) d0^3 u, u = d0^2 F", window_text(gmax, nmax + 5), r.is_zero(),
                  r.is_zero() ? std::to_string(monos.size()) + " monomials" : detail});

  const Window w(gmax, nmax);
  const TSeries G = kdv::assemble_G(engine, w);
  const kdv::TauPair pair = kdv::make_tau_pair(engine, w);
  Series d = pair.G.series() - G.series();
  rows.push_back({"G = F(t_j + c_j s^{j-1})", window_text(gmax, nmax), d.is_zero(), first_term(d)});
  Series z = G.at_s_zero().series() - kdv::assemble_F(engine, w).series();
  rows.push_back({"F = G|s=0", window_text(gmax, nmax), z.is_zero(), first_term(z)});
  return rows;
}

std::vector<CheckRow> cross_suite(volume::VolumeEngine& volumes, intersect::IntersectionEngine& engine, int dmax,
                                  int jobs) {
  std::vector<volume::VolKey> keys;
  for (int d = 0; d <= dmax; ++d)
    for (int g = 0; 3 * g - 3 < d; ++g) {
      const int n = d - 3 * g + 3;
      if (n >= 1 && 2 * g - 2 + n > 0) keys.emplace_back(g, n);
    }
  std::vector<std::array<CheckRow, 3>> cells(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    const auto& key = keys[i];
    const std::string wt = "(g,n)=(" + std::to_string(key.g) + "," + std::to_string(key.n) + ")";
    const EvenPoly v = volumes.v_poly(key);
    const EvenPoly b = v_from_brackets(engine, key);
    const EvenPoly s = v_from_brackets(engine, key, true);
    cells[i][0] = {"v_poly = bracket assembly", wt, v == b, first_difference(v, b)};
    cells[i][1] = {"bracket = kappa_from_psi", wt, b == s, first_difference(b, s)};
    cells[i][2] = {"v_poly symmetric", wt, v.is_symmetric(), v.is_symmetric() ? "-" : "not symmetric"};
  });
  std::vector<CheckRow> rows;
  for (auto& c : cells) rows.insert(rows.end(), c.begin(), c.end());
  return rows;
}

}  // namespace wpv::verify
