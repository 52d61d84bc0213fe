#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <thread>

#include "wpv/intersect.hpp"
#include "wpv/volume.hpp"

using namespace wpv;
using namespace wpv::volume;

namespace {

EvenPoly q(int n, int i) { return EvenPoly::variable(n, i); }
EvenPoly P(int n) { return EvenPoly::pi_squared(n); }
EvenPoly c(int n, long v) { return EvenPoly::constant(n, v); }

EvenPoly sum_q(int n) {
  EvenPoly s(n);
  for (int i = 0; i < n; ++i) s += q(n, i);
  return s;
}

// (n - 3)! / prod d_i!
Rational genus0_closed(const std::vector<int>& d) {
  BigInt den = 1;
  for (int x : d) den *= factorial(x);
  return Rational(factorial(static_cast<int>(d.size()) - 3)) / Rational(den);
}

std::vector<VolKey> keys_up_to(int dmax) {
  std::vector<VolKey> out;
  for (const auto& row : [&] {
         VolumeEngine e;
         return volume_table(e, dmax);
       }())
    out.push_back(row.key);
  return out;
}

long count_tuples(int n, int d) {
  // number of n-tuples of nonnegative integers with sum <= d
  long r = 1;
  for (int i = 1; i <= n; ++i) r = r * (d + i) / i;
  return r;
}

}  // namespace

TEST_CASE("keys") {
  CHECK_THROWS_AS(VolKey(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(VolKey(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(VolKey(-1, 5), std::invalid_argument);
  CHECK(VolKey(2, 3).dim() == 6);
}

TEST_CASE("seeds and first recursion steps") {
  VolumeEngine e;
  CHECK(e.v_poly({0, 3}) == c(3, 1));
  CHECK(e.v_poly({1, 1}) == (c(1, 1) + q(1, 0)) * make_rational(1, 24));
  CHECK(e.v_poly({0, 4}) == c(4, 1) + sum_q(4));
  CHECK(e.v_poly({1, 2}).constant_term() == make_rational(1, 16));
  CHECK(e.v_poly({0, 5}).constant_term() == make_rational(5, 2));
  CHECK(e.v_poly({2, 1}).constant_term() == make_rational(29, 3072));
}

TEST_CASE("Vol against published closed forms") {
  VolumeEngine e;
  CHECK(e.vol_poly({1, 1}) == (q(1, 0) + P(1) * Rational(4)) * make_rational(1, 48));
  CHECK(e.vol_poly({0, 3}) == c(3, 1));
  CHECK(e.vol_poly({0, 4}) == (P(4) * Rational(4) + sum_q(4)) * make_rational(1, 2));
  // (1/192)(4 pi^2 + L1^2 + L2^2)(12 pi^2 + L1^2 + L2^2)
  CHECK(e.vol_poly({1, 2}) ==
        (P(2) * Rational(4) + sum_q(2)) * (P(2) * Rational(12) + sum_q(2)) * make_rational(1, 192));
  // (1/8) sum L^4 + (1/2) sum_{i<j} L_i^2 L_j^2 + 3 pi^2 sum L^2 + 10 pi^4
  EvenPoly v05 = P(5) * P(5) * Rational(10) + P(5) * sum_q(5) * Rational(3);
  for (int i = 0; i < 5; ++i) {
    v05 += q(5, i) * q(5, i) * make_rational(1, 8);
    for (int j = i + 1; j < 5; ++j) v05 += q(5, i) * q(5, j) * make_rational(1, 2);
  }
  CHECK(e.vol_poly({0, 5}) == v05);
  // (1/2211840)(4 pi^2 + L^2)(12 pi^2 + L^2)(6960 pi^4 + 384 pi^2 L^2 + 5 L^4)
  EvenPoly a = P(1) * Rational(4) + q(1, 0), b = P(1) * Rational(12) + q(1, 0);
  EvenPoly f = P(1) * P(1) * Rational(6960) + P(1) * q(1, 0) * Rational(384) + q(1, 0) * q(1, 0) * Rational(5);
  CHECK(e.vol_poly({2, 1}) == a * b * f * make_rational(1, 2211840));
}

TEST_CASE("Vol_{1,1}(0) = pi^2/12 = zeta(2)/2") {
  VolumeEngine e;
  EvenPoly v = e.vol_poly({1, 1});
  Rational p_coeff = v.coefficient({0, 1});
  CHECK(p_coeff == make_rational(1, 12));
  double zeta2 = 0;
  for (int n = 1; n <= 2000000; ++n) zeta2 += 1.0 / (double(n) * n);
  CHECK(p_coeff.get_d() * std::numbers::pi * std::numbers::pi == doctest::Approx(zeta2 / 2).epsilon(1e-6));
}

TEST_CASE("to_vol") {
  EvenPoly v = c(1, 1) + q(1, 0);
  CHECK(to_vol(v, 1) == P(1) * Rational(2) + q(1, 0) * make_rational(1, 2));
  CHECK_THROWS_AS(to_vol(v, 0), std::invalid_argument);
  CHECK_THROWS_AS(to_vol(P(1), 1), std::invalid_argument);
}

TEST_CASE("symmetry, degree and positivity for 3g-3+n <= 5") {
  VolumeEngine e;
  for (const auto& key : keys_up_to(5)) {
    CAPTURE(key.g);
    CAPTURE(key.n);
    EvenPoly v = e.v_poly(key);
    CHECK(v.is_symmetric());
    CHECK(v.total_degree() == key.dim());
    CHECK(static_cast<long>(v.size()) == count_tuples(key.n, key.dim()));
    for (const auto& [ex, coeff] : v.terms()) CHECK(coeff > 0);
  }
}

TEST_CASE("top-degree part in genus 0 matches the multinomial formula") {
  VolumeEngine e;
  for (int n = 3; n <= 8; ++n) {
    EvenPoly v = e.v_poly({0, n});
    for (const auto& [ex, coeff] : v.terms()) {
      std::vector<int> d(ex.begin(), ex.end() - 1);
      int deg = 0;
      BigInt den = 1;
      for (int x : d) {
        deg += x;
        den *= factorial(x);
      }
      if (deg != n - 3) continue;
      CHECK(coeff == genus0_closed(d) / Rational(den));
    }
  }
}

TEST_CASE("top-degree part in higher genus matches pure psi brackets") {
  VolumeEngine e;
  intersect::IntersectionEngine b;
  for (const auto& key : keys_up_to(5)) {
    if (key.g == 0) continue;
    const EvenPoly v = e.v_poly(key);
    for (const auto& [ex, coeff] : v.terms()) {
      std::vector<int> d(ex.begin(), ex.end() - 1);
      int deg = 0;
      BigInt den = 1;
      for (int x : d) {
        deg += x;
        den *= factorial(x);
      }
      if (deg != key.dim()) continue;
      CHECK(coeff == b.bracket(intersect::BracketKey::make(key.g, 0, d)) / Rational(den));
    }
  }
}

TEST_CASE("memoization and concurrent use") {
  VolumeEngine e;
  e.v_poly({2, 2});
  const auto after = e.computed();
  CHECK(after > 0);
  e.v_poly({2, 2});
  e.v_poly({1, 3});
  CHECK(e.computed() == after);

  VolumeEngine shared, serial;
  const std::vector<VolKey> keys{{2, 2}, {1, 4}, {0, 7}, {2, 1}, {1, 5}, {0, 8}};
  std::vector<EvenPoly> got(keys.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < keys.size(); ++i) pool.emplace_back([&, i] { got[i] = shared.v_poly(keys[i]); });
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < keys.size(); ++i) CHECK(got[i] == serial.v_poly(keys[i]));
}

TEST_CASE("volume_table") {
  VolumeEngine e;
  auto t0 = volume_table(e, 0);
  REQUIRE(t0.size() == 1);
  CHECK(t0[0].key == VolKey(0, 3));
  auto t1 = volume_table(e, 1);
  REQUIRE(t1.size() == 3);
  CHECK(t1[1].key == VolKey(0, 4));
  CHECK(t1[2].key == VolKey(1, 1));
  auto t2 = volume_table(e, 2);
  REQUIRE(t2.size() == 5);
  CHECK(t2[3].key == VolKey(0, 5));
  CHECK(t2[4].key == VolKey(1, 2));
  CHECK(t2[3].v.constant_term() == make_rational(5, 2));
  CHECK(t2[4].vol == e.vol_poly({1, 2}));
  CHECK_THROWS_AS(volume_table(e, -1), std::invalid_argument);
}
