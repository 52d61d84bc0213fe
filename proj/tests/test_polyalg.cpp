#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "wpv/even_poly.hpp"
#include "wpv/series.hpp"

using namespace wpv;

namespace {

EvenPoly q(int nvars, int i) { return EvenPoly::variable(nvars, i); }

Monomial mono(int s, std::vector<int> t) {
  Monomial m(s, std::move(t));
  m.trim();
  return m;
}

}  // namespace

TEST_CASE("EvenPoly arithmetic and queries") {
  EvenPoly a = EvenPoly::constant(2, 1) + q(2, 0);
  EvenPoly b = EvenPoly::constant(2, 1) - q(2, 0);
  EvenPoly p = a * b;
  CHECK(p.coefficient({0, 0, 0}) == 1);
  CHECK(p.coefficient({2, 0, 0}) == -1);
  CHECK(p.coefficient({1, 0, 0}) == 0);
  CHECK(p.total_degree() == 2);
  CHECK(p.constant_term() == 1);
  CHECK_FALSE(p.has_pi());
  CHECK((p - p).is_zero());
  CHECK(EvenPoly(3).total_degree() == -1);
  CHECK(EvenPoly::pi_squared(1).has_pi());
  CHECK_THROWS_AS(a + EvenPoly::constant(3, 1), std::invalid_argument);
}

TEST_CASE("EvenPoly symmetry and relabelling") {
  EvenPoly s = q(3, 0) + q(3, 1) + q(3, 2);
  CHECK(s.is_symmetric());
  EvenPoly t = q(3, 0) + q(3, 1) * make_rational(2, 1) + q(3, 2);
  CHECK_FALSE(t.is_symmetric());
  std::vector<int> map{2, 0};
  EvenPoly e = (q(2, 0) + q(2, 1) * Rational(5)).embed(3, map);
  CHECK(e.coefficient({0, 0, 1, 0}) == 1);
  CHECK(e.coefficient({1, 0, 0, 0}) == 5);
}

TEST_CASE("text, LaTeX and JSON output") {
  EvenPoly vol11 = (q(1, 0) + EvenPoly::pi_squared(1) * Rational(4)) * make_rational(1, 48);
  CHECK(to_text(vol11) == "(q1 + 4*P)/48");
  CHECK(to_latex(vol11) == "\\frac{1}{48}\\left(L_{1}^{2} + 4 \\pi^{2}\\right)");
  EvenPoly v04 = EvenPoly::constant(4, 1) + q(4, 0) + q(4, 1) + q(4, 2) + q(4, 3);
  CHECK(to_text(v04) == "1 + q1 + q2 + q3 + q4");
  CHECK(to_text(EvenPoly(2)) == "0");
  CHECK(to_text(q(1, 0) * make_rational(-1, 3)) == "-q1/3");

  auto j = nlohmann::json::parse(to_json(vol11));
  CHECK(j["nvars"] == 1);
  CHECK(j["variables"] == nlohmann::json::array({"q1", "P"}));
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["monomial"] == nlohmann::json::array({1, 0}));
  CHECK(j["terms"][0]["coeff"] == "1/48");
  CHECK(j["terms"][1]["coeff"] == "1/12");
}

TEST_CASE("avg_integrate") {
  TPoly p{2, {}};
  p.add(2, EvenPoly::constant(2, 3));  // 3 t^2 -> q1
  p.add(0, q(2, 1));                   // q2
  EvenPoly r = avg_integrate(p, 0);
  CHECK(r == q(2, 0) + q(2, 1));
  TPoly odd{1, {}};
  odd.add(3, EvenPoly::constant(1, 1));
  CHECK_THROWS_AS(avg_integrate(odd, 0), std::domain_error);
  TPoly cancel{1, {}};
  cancel.add(1, EvenPoly::constant(1, 1));
  cancel.add(1, EvenPoly::constant(1, -1));
  CHECK(avg_integrate(cancel, 0).is_zero());
}

TEST_CASE("monomial labels") {
  CHECK(genus_label(mono(0, {3})) == GenusN{0, 3});
  CHECK(genus_label(mono(0, {0, 1})) == GenusN{1, 1});
  CHECK(genus_label(mono(1, {1})) == GenusN{1, 1});
  CHECK(genus_label(mono(0, {0, 0, 0, 0, 1})) == GenusN{2, 1});
  CHECK(genus_label(mono(2, {5})) == GenusN{0, 5});
  CHECK_FALSE(genus_label(mono(0, {2})).has_value());     // (0,2) unstable
  CHECK_FALSE(genus_label(mono(0, {1, 1})).has_value());  // 3g - 3 = -1
  CHECK_FALSE(genus_label(mono(3, {})).has_value());      // n = 0
  CHECK(to_string(mono(1, {2, 0, 1})) == "s*t0^2*t2");
}

TEST_CASE("window cells are ordered by complexity") {
  Window w(2, 2);
  auto cells = w.cells();
  for (std::size_t i = 1; i < cells.size(); ++i)
    CHECK(3 * cells[i - 1].g + cells[i - 1].n <= 3 * cells[i].g + cells[i].n);
  CHECK(w.max_index() == 5);
  CHECK_THROWS_AS(Window(0, 0), std::invalid_argument);
}

TEST_CASE("series derivative and truncated product") {
  Series f = Series::monomial(mono(0, {3}), make_rational(1, 6)) + Series::monomial(mono(0, {0, 1}), make_rational(1, 24));
  CHECK(f.derivative(0) == Series::monomial(mono(0, {2}), make_rational(1, 2)));
  Series sq = f.mul(f, 4);
  CHECK(sq.coefficient(mono(0, {3, 1})) == make_rational(1, 72));
  CHECK(sq.coefficient(mono(0, {6})) == 0);  // n = 6 dropped
  CHECK(f.mul(f).coefficient(mono(0, {6})) == make_rational(1, 36));
}

TEST_CASE("TSeries rejects monomials outside the window") {
  TSeries t(Window(1, 2));
  t.add_term(mono(1, {1}), make_rational(1, 24));
  CHECK_THROWS_AS(t.add_term(mono(0, {3}), 1), std::invalid_argument);
  CHECK_THROWS_AS(t.coefficient(mono(0, {2})), std::invalid_argument);
  CHECK(t.coefficient(mono(0, {0, 1})) == 0);
  CHECK(t.at_s_zero().terms().empty());
}

TEST_CASE("series_exp is inverse to exp(-f) and satisfies d exp f = f' exp f") {
  Series f = Series::monomial(mono(0, {3}), make_rational(1, 6)) + Series::monomial(mono(1, {1}), make_rational(1, 24)) +
             Series::monomial(mono(0, {1, 0, 1}), make_rational(1, 24)) + Series::monomial(mono(0, {0, 2}), make_rational(1, 48));
  const int n = 7;
  Series e = series_exp(f, n), em = series_exp(f * Rational(-1), n);
  CHECK(e.mul(em, n) == Series::constant(1));
  for (int i : {0, 1, 2}) {
    Series lhs = e.derivative(i).filtered([&](const Monomial& m) { return m.n() <= n - 1; });
    CHECK(lhs == f.derivative(i).mul(e, n - 1));
  }
  CHECK_THROWS_AS(series_exp(Series::constant(1), 3), std::invalid_argument);
  CHECK_THROWS_AS(series_exp(Series::monomial(mono(2, {}), 1), 3), std::invalid_argument);
}

TEST_CASE("shift substitution") {
  TSeries f(Window(2, 6));
  f.add_term(mono(0, {2, 0, 0, 1}), make_rational(1, 2));  // t0^2 t3 / 2, (g, n) = (1, 3)
  TSeries zero = shift_substitute(f, {{2, 0}, {3, 0}}, Window(2, 6));
  CHECK(zero == f);
  // t3 -> t3 - s^2/2
  TSeries g = shift_substitute(f, {{3, make_rational(-1, 2)}}, Window(2, 6));
  CHECK(g.coefficient(mono(2, {2})) == make_rational(-1, 4));
  CHECK(g.coefficient(mono(0, {2, 0, 0, 1})) == make_rational(1, 2));
  CHECK_THROWS_AS(shift_substitute(f, {{1, 1}}, Window(2, 6)), std::invalid_argument);
}
