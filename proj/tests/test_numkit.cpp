#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <thread>
#include <vector>

#include "wpv/numkit.hpp"
#include "wpv/rational.hpp"

using namespace wpv;
using namespace wpv::numkit;

namespace {

// Akiyama-Tanigawa: B_n with B_1 = +1/2; even indices agree with the usual ones.
std::vector<Rational> akiyama_tanigawa(int n_max) {
  std::vector<Rational> out, a(static_cast<std::size_t>(n_max) + 1);
  for (int m = 0; m <= n_max; ++m) {
    a[static_cast<std::size_t>(m)] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j)
      a[static_cast<std::size_t>(j) - 1] = j * (a[static_cast<std::size_t>(j) - 1] - a[static_cast<std::size_t>(j)]);
    out.push_back(a[0]);
  }
  return out;
}

// Reciprocal of a power series with nonzero constant term.
std::vector<Rational> invert(const std::vector<Rational>& a) {
  std::vector<Rational> b(a.size());
  b[0] = 1 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += a[k] * b[n - k];
    b[n] = -acc / a[0];
  }
  return b;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(make_rational(8, 4)) == "2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK(parse_rational("-12/8") == make_rational(-3, 2));
  CHECK(parse_rational("+7") == Rational(7));
  CHECK(parse_rational(to_string(make_rational(-355, 113))) == make_rational(-355, 113));
  for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.5", "--1", "1/-2"})
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
}

TEST_CASE("bernoulli examples") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == make_rational(1, 6));
  CHECK(bernoulli(2) == make_rational(-1, 30));
  CHECK(bernoulli(3) == make_rational(1, 42));
}

TEST_CASE("bernoulli agrees with the Akiyama-Tanigawa algorithm up to B_40") {
  auto at = akiyama_tanigawa(40);
  for (int m = 0; m <= 20; ++m) CHECK(bernoulli(m) == at[static_cast<std::size_t>(2 * m)]);
}

TEST_CASE("bernoulli satisfies the coth recurrence") {
  // z/2 cosh(z/2) = sinh(z/2) sum b_n z^{2n}, b_n = B_{2n}/(2n)!
  for (int n = 0; n <= 20; ++n) {
    Rational lhs = 0;
    for (int k = 0; k <= n; ++k) {
      Rational b = bernoulli(n - k) / Rational(factorial(2 * (n - k)));
      lhs += b / Rational(BigInt(1) << (2 * k)) / Rational(factorial(2 * k + 1));
    }
    CHECK(lhs == Rational(1) / Rational(BigInt(1) << (2 * n)) / Rational(factorial(2 * n)));
  }
}

TEST_CASE("bernoulli is safe under concurrent first use") {
  std::vector<std::thread> pool;
  std::vector<Rational> got(8);
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { got[static_cast<std::size_t>(i)] = bernoulli(30 + i % 3); });
  for (auto& t : pool) t.join();
  auto at = akiyama_tanigawa(64);
  for (int i = 0; i < 8; ++i) CHECK(got[static_cast<std::size_t>(i)] == at[static_cast<std::size_t>(2 * (30 + i % 3))]);
}

TEST_CASE("double factorial") {
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(1) == 1);
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(9) == 945);
  CHECK_THROWS_AS(double_factorial(4), std::domain_error);
  CHECK_THROWS_AS(double_factorial(-3), std::domain_error);
  CHECK_THROWS_AS(double_factorial(0), std::domain_error);
}

TEST_CASE("alpha and beta examples") {
  CHECK(alpha_coeff(0) == 1);
  CHECK(alpha_coeff(1) == make_rational(-1, 3));
  CHECK(alpha_coeff(2) == make_rational(1, 30));
  CHECK(beta_coeff(0) == 1);
  CHECK(beta_coeff(1) == make_rational(1, 3));
  // x/sin x = 1 + x^2/6 + 7x^4/360 + ..., with x^2 = 2s
  CHECK(beta_coeff(2) == make_rational(7, 90));
  CHECK(beta_coeff(-1) == 0);
}

TEST_CASE("beta is the reciprocal series of alpha") {
  std::vector<Rational> a;
  for (int i = 0; i <= 20; ++i) a.push_back(alpha_coeff(i));
  auto b = invert(a);
  for (int i = 0; i <= 20; ++i) CHECK(beta_coeff(i) == b[static_cast<std::size_t>(i)]);
}

TEST_CASE("alpha-beta convolution is the identity") {
  for (int n = 0; n <= 20; ++n) {
    Rational acc = 0;
    for (int i = 0; i <= n; ++i) acc += alpha_coeff(i) * beta_coeff(n - i);
    CHECK(acc == (n == 0 ? 1 : 0));
  }
}

TEST_CASE("gamma shift coefficients") {
  CHECK(gamma_shift_coeff(2) == 1);
  CHECK(gamma_shift_coeff(3) == make_rational(-1, 2));
  CHECK(gamma_shift_coeff(4) == make_rational(1, 6));
  for (int j = 2; j <= 20; ++j) {
    CHECK(gamma_shift_coeff(j) * Rational(factorial(j - 1)) == (j % 2 == 0 ? 1 : -1));
    CHECK(gamma_shift_coeff(j) == -Rational(double_factorial(2 * j - 1)) * alpha_coeff(j - 1));
  }
  CHECK_THROWS_AS(gamma_shift_coeff(1), std::domain_error);
}

TEST_CASE("coefficient table") {
  auto t = coeff_table(6);
  REQUIRE(t.alpha.size() == 7);
  REQUIRE(t.gamma_coeff.size() == 7);
  CHECK(t.gamma_coeff[0] == 0);
  CHECK(t.gamma_coeff[1] == 0);
  for (int i = 0; i <= 6; ++i) {
    CHECK(t.alpha[static_cast<std::size_t>(i)] == alpha_coeff(i));
    CHECK(t.beta[static_cast<std::size_t>(i)] == beta_coeff(i));
    CHECK(t.bernoulli[static_cast<std::size_t>(i)] == bernoulli(i));
  }
  CHECK(t.gamma_coeff[5] == gamma_shift_coeff(5));
}
