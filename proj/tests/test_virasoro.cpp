#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wpv/intersect.hpp"
#include "wpv/kdv.hpp"
#include "wpv/numkit.hpp"
#include "wpv/virasoro.hpp"

using namespace wpv;
using namespace wpv::virasoro;

namespace {

Monomial t(std::vector<int> e, int s = 0) { return Monomial(s, std::move(e)); }

struct Fixture {
  Window w{2, 4};
  Truncation tr = truncation_for(w);
  Truncation big{tr.max_index + 2, tr.max_s};
  intersect::IntersectionEngine engine;
  TSeries G = kdv::assemble_G(engine, w);
  TSeries F = kdv::assemble_F(engine, w);
};

Fixture& fx() {
  static Fixture f;
  return f;
}

DiffOp beta_sum(int base, int factor, const Truncation& tr, bool hat) {
  DiffOp out;
  for (int i = 0; i <= tr.max_s; ++i)
    out += (hat ? build_Vhat(base + i, tr) : build_E(base + i, tr)).times_s(i) * (numkit::beta_coeff(i) * factor);
  return out.restricted(tr.max_index, tr.max_s);
}

// exp(-f) * op(exp f) by brute force: expand, apply, multiply back.
Series brute_force(const DiffOp& op, const Series& f, int n_max) {
  Series ef = series_exp(f, n_max + 2);
  Series minus_f = f * Rational(-1);
  return series_exp(minus_f, n_max).mul(op.apply(ef), n_max);
}

}  // namespace

TEST_CASE("builders reject bad indices") {
  Truncation tr{3, 3};
  CHECK_THROWS_AS(build_Vhat(-2, tr), std::invalid_argument);
  CHECK_THROWS_AS(build_V(-2, tr), std::invalid_argument);
  CHECK_THROWS_AS(build_L(-2, tr), std::invalid_argument);
  CHECK_NOTHROW(build_E(-2, tr));
  CHECK_THROWS_AS(build_J(0, tr), std::invalid_argument);
  CHECK_THROWS_AS(build_J(2, tr), std::invalid_argument);
  CHECK(truncation_for(Window(2, 4)).max_index == 7);
}

TEST_CASE("operator terms") {
  Truncation tr{4, 4};
  DiffOp v0 = build_Vhat(0, tr);
  CHECK(v0.coefficient(Monomial(), {0, 1}) == make_rational(-3, 2));
  CHECK(v0.coefficient(Monomial(), {}) == make_rational(1, 16));
  CHECK(v0.level() == 0);
  DiffOp vm = build_Vhat(-1, tr);
  CHECK(vm.coefficient(Monomial(), {1}) == make_rational(-1, 2));
  CHECK(vm.coefficient(t({2}), {}) == make_rational(1, 4));
  CHECK(vm.coefficient(t({}, 1), {}) == make_rational(1, 48));
  DiffOp lm = build_L(-1, tr);
  CHECK(lm.coefficient(t({2}), {}) == make_rational(1, 4));
  CHECK(lm.max_s() == 0);
  CHECK(build_J(3, tr) == DiffOp::partial(1, 3));
  CHECK(build_J(-3, tr) == DiffOp::multiply(t({0, 1}), 1));
  CHECK(build_J(-1, tr) == DiffOp::multiply(t({1}), 1));
  CHECK(vm.order() == 2);
}

TEST_CASE("J_{-1} J_1 and the E_0 constant") {
  Truncation tr{3, 3};
  // J_{-1} J_1 T_1 = T_1; J_1 J_{-1} 1 = 1
  Series T1 = Series::monomial(t({1}));
  CHECK(build_J(-1, tr).compose(build_J(1, tr)).apply(T1) == T1);
  CHECK(build_J(1, tr).compose(build_J(-1, tr)).apply(Series::constant(1)) == Series::constant(1));
  // normal ordering kills the vacuum contraction; only the delta term survives
  CHECK(build_E(0, tr).apply(Series::constant(1)) == Series::constant(make_rational(1, 16)));
  CHECK(build_E(1, tr).apply(Series::constant(1)).is_zero());
}

TEST_CASE("Vhat at s = 0 equals L") {
  Truncation tr{7, 7};
  for (int k = -1; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(build_Vhat(k, tr).at_s_zero() == build_L(k, tr));
    CHECK(build_V(k, tr).at_s_zero() == build_L(k, tr));
  }
}

TEST_CASE("boson representation") {
  const auto& tr = fx().tr;
  for (int k = -1; k <= 3; ++k) {
    CAPTURE(k);
    DiffOp rhs = build_J(2 * k + 3, tr) * make_rational(-1, 2) + beta_sum(k, 1, tr, false);
    CHECK(rhs.restricted(tr.max_index, tr.max_s) == build_Vhat(k, tr));
  }
}

TEST_CASE("constant terms of V_k") {
  const auto& tr = fx().tr;
  for (int k = -1; k <= 3; ++k) {
    const DiffOp v_k = build_V(k, tr);
    DiffOp c;
    for (const auto& [key, v] : v_k.terms())
      if (key.deriv.empty()) c.add_term(key.mult, {}, v);
    if (k == -1)
      CHECK(c == DiffOp::multiply(t({2}), make_rational(1, 4)));
    else if (k == 0)
      CHECK(c == DiffOp::constant(make_rational(1, 16)));
    else
      CHECK(c.is_zero());
  }
}

TEST_CASE("commutation relations") {
  const auto& tr = fx().tr;
  const auto& big = fx().big;
  auto cut = [&](const DiffOp& d) { return d.restricted(tr.max_index, tr.max_s); };
  CHECK(cut(commutator(build_L(-1, big), build_L(1, big))) == build_L(0, tr) * Rational(-2));
  CHECK(cut(commutator(build_L(1, big), build_L(-1, big))) == build_L(0, tr) * Rational(2));
  CHECK(cut(commutator(build_V(0, big), build_V(1, big))) == build_V(1, tr) * Rational(-1));
  for (int n = -1; n <= 3; ++n)
    for (int m = -1; m <= 3; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      if (n == m) {
        CHECK(commutator(build_V(n, tr), build_V(n, tr)).is_zero());
        continue;
      }
      CHECK(cut(commutator(build_V(n, big), build_V(m, big))) == build_V(n + m, tr) * Rational(n - m));
      CHECK(cut(commutator(build_Vhat(n, big), build_Vhat(m, big))) == beta_sum(n + m, n - m, tr, true));
    }
}

TEST_CASE("two extra indices of cutoff are enough for the relations") {
  const auto& tr = fx().tr;
  Truncation bigger{tr.max_index + 4, tr.max_s};
  auto cut = [&](const DiffOp& d) { return d.restricted(tr.max_index, tr.max_s); };
  for (auto [n, m] : std::vector<std::pair<int, int>>{{-1, 2}, {0, 3}, {1, 2}})
    CHECK(cut(commutator(build_Vhat(n, fx().big), build_Vhat(m, fx().big))) ==
          cut(commutator(build_Vhat(n, bigger), build_Vhat(m, bigger))));
}

TEST_CASE("apply_to_exp examples") {
  Series f = Series::monomial(t({3}), make_rational(1, 6));
  CHECK(apply_to_exp(DiffOp::partial(0), f) == Series::monomial(t({2}), make_rational(1, 2)));
  Truncation tr{3, 3};
  // L_{-1}: -1/2 d_0 + t_0^2/4 + ...; the t_0^2 coefficient vanishes iff <tau_0^3> = 1
  CHECK(apply_to_exp(build_L(-1, tr), f, 2).coefficient(t({2})) == 0);
  Series f2 = Series::monomial(t({3}), make_rational(1, 3));
  CHECK(apply_to_exp(build_L(-1, tr), f2, 2).coefficient(t({2})) == make_rational(-1, 4));
  // L_0 constant: -3/2 <tau_1> + 1/16
  CHECK(apply_to_exp(build_L(0, tr), Series::monomial(t({0, 1}), make_rational(1, 24)), 0).is_zero());
  // Vhat_{-1} s coefficient: -1/2 <kappa_1 tau_0>_1 + 1/48
  Series g = f + Series::monomial(t({1}, 1), make_rational(1, 24));
  CHECK(apply_to_exp(build_Vhat(-1, tr), g, 2).coefficient(t({}, 1)) == 0);
  CHECK(apply_to_exp(build_Vhat(-1, tr), f, 2).coefficient(t({}, 1)) == make_rational(1, 48));

  CHECK_THROWS_AS(apply_to_exp(DiffOp::partial(0), Series::constant(1)), std::invalid_argument);
  DiffOp third = DiffOp::partial(0).compose(DiffOp::partial(0)).compose(DiffOp::partial(0));
  CHECK_THROWS_AS(apply_to_exp(third, f), std::domain_error);
}

TEST_CASE("apply_to_exp and residual_coefficient against brute force") {
  Window w(1, 3);
  intersect::IntersectionEngine e;
  TSeries G = kdv::assemble_G(e, w);
  Truncation tr = truncation_for(w);
  for (int k = -1; k <= 2; ++k) {
    CAPTURE(k);
    for (const DiffOp& op : {build_Vhat(k, tr), build_E(k, tr), build_V(k, tr)}) {
      Series fast = apply_to_exp(op, G.series(), 3);
      Series slow = brute_force(op, G.series(), 3);
      CHECK(fast == slow);
      for (const auto& [m, c] : slow.terms()) CHECK(residual_coefficient(op, G.series(), m) == c);
      CHECK(residual_coefficient(op, G.series(), t({5, 0, 0, 1}, 2)) == slow.coefficient(t({5, 0, 0, 1}, 2)));
    }
  }
}

TEST_CASE("safe region") {
  Window w(2, 4);
  CHECK(residual_safe(t({2}), -1, w));
  CHECK(residual_safe(t({3}), -1, w));
  CHECK_FALSE(residual_safe(t({2, 2}), -1, w));  // (0,5)
  CHECK(residual_safe(t({4}), -1, w));            // negative genus
  CHECK(residual_safe(t({1}), -1, w));            // non-integral genus
  CHECK(residual_safe(t({}, 1), -1, w));    // (1,1) with n + 1 <= 4
  CHECK(residual_safe(t({1, 0, 1}), 0, w));  // (1,3), needs (0,4)
  CHECK(residual_safe(t({2, 0, 1}), 0, w));   // non-integral genus
  CHECK_FALSE(residual_safe(t({1, 1, 1}), 0, w));  // (1,4), needs (0,5)
  CHECK_FALSE(residual_safe(t({0, 0, 0, 0, 0, 0, 0, 1}), 0, w));  // genus 3
}

TEST_CASE("constraints annihilate the assembled series") {
  auto& f = fx();
  for (int k = -1; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(constraint_residual(build_Vhat(k, f.tr), f.G).is_zero());
    CHECK(constraint_residual(build_L(k, f.tr), f.F).is_zero());
    CHECK_FALSE(apply_to_exp(build_Vhat(k, f.tr), f.G.series(), f.w.n_max).is_zero());
  }
  DiffOp unlabeled = DiffOp::partial(0);
  CHECK_THROWS_AS(constraint_residual(unlabeled, f.G), std::invalid_argument);
}

TEST_CASE("perturbed series are detected") {
  auto& f = fx();
  const Monomial targets[] = {t({0, 0, 0, 0, 1}), t({1, 1}, 1), t({1, 0, 1}), t({1, 0, 0, 1}, 2)};
  for (const auto& m : targets) {
    CAPTURE(to_string(m));
    TSeries bad = f.G;
    bad.add_term(m, make_rational(1, 1000));
    bool seen = false;
    for (int k = -1; k <= 6 && !seen; ++k) seen = !constraint_residual(build_Vhat(k, f.tr), bad).is_zero();
    CHECK(seen);
  }
}

TEST_CASE("solving from constraints alone") {
  auto& f = fx();
  TSeries small = solve_series_from_constraints(Family::L, Window(1, 1));
  CHECK(small.coefficient(t({0, 1})) == make_rational(1, 24));
  TSeries g0 = solve_series_from_constraints(Family::L, Window(0, 3));
  CHECK(g0.coefficient(t({3})) == make_rational(1, 6));
  TSeries v = solve_series_from_constraints(Family::Vhat, Window(1, 1));
  CHECK(v.coefficient(t({1}, 1)) == make_rational(1, 24));
  CHECK(solve_series_from_constraints(Family::L, f.w) == f.F);
  CHECK(solve_series_from_constraints(Family::Vhat, f.w) == f.G);
}
