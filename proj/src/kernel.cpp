#include "wpv/kernel.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "wpv/numkit.hpp"

namespace wpv::kernel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxPanels = 200000;
constexpr int kMaxDepth = 40;

double logistic_tail(double z) {
  // 1 / (1 + e^z)
  if (z > 0) {
    double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double inv_factorial(int n) { return 1.0 / std::tgamma(n + 1.0); }

double panel(const std::function<double(double)>& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  return Rule::integrate(f, a, b);
}

struct Adaptive {
  const std::function<double(double)>& f;
  int panels = 0;
  bool ok = true;

  double run(double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = panel(f, a, m);
    double right = panel(f, m, b);
    double refined = left + right;
    if (std::abs(refined - whole) <= tol || depth >= kMaxDepth || panels >= kMaxPanels) {
      if (std::abs(refined - whole) > tol) ok = false;
      panels += 2;
      return refined;
    }
    return run(a, m, left, 0.5 * tol, depth + 1) + run(m, b, right, 0.5 * tol, depth + 1);
  }
};

// Adaptive composite Gauss-Legendre on [a, b] with extra breakpoints.
double integrate(const std::function<double(double)>& f, std::vector<double> cuts, double tol, int& panels,
                 bool& ok) {
  double total = 0.0;
  double span = cuts.back() - cuts.front();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    Adaptive ad{f};
    total += ad.run(a, b, panel(f, a, b), tol * (b - a) / span, 0);
    panels += ad.panels;
    ok = ok && ad.ok;
  }
  return total;
}

std::vector<double> breakpoints(double a, double b, double kink) {
  std::vector<double> cuts{a};
  if (kink > a && kink < b) cuts.push_back(kink);
  cuts.push_back(b);
  return cuts;
}

// Smallest cutoff (starting from the default one) whose tail bound is below tol/10.
double choose_cutoff(int p, double t, double tol) {
  double cutoff = std::abs(t) + std::log(10.0 / tol) / kPi + 5.0;
  while (tail_bound(p, t, cutoff) >= tol / 10.0) cutoff += 1.0;
  return cutoff;
}

}  // namespace

Rational HPoly::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs.size())) return 0;
  return coeffs[static_cast<std::size_t>(power)];
}

double HPoly::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

Rational HPoly::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

HPoly h_closed(int k) {
  if (k < 0) throw std::domain_error("h_closed expects k >= 0");
  HPoly h;
  h.k = k;
  h.coeffs.assign(static_cast<std::size_t>(2 * k + 3), Rational(0));
  for (int m = 0; m <= k + 1; ++m) {
    // (-1)^(m-1) (2^{2m} - 2) B_{2m}/(2m)! * t^{2k+2-2m}/(2k+2-2m)!
    BigInt weight = (BigInt(1) << (2 * m)) - 2;
    Rational c = Rational(weight) * numkit::bernoulli(m) / Rational(factorial(2 * m));
    if (m % 2 == 0) c = -c;
    int p = 2 * k + 2 - 2 * m;
    h.coeffs[static_cast<std::size_t>(p)] = c / Rational(factorial(p));
  }
  return h;
}

double kernel_eval(double x, double t) { return logistic_tail(kPi * (x + t)) + logistic_tail(kPi * (x - t)); }

double tail_bound(int p, double t, double cutoff) {
  // int_X^inf u^p/p! 2 e^{-pi(u-|t|)} du = 2 e^{-pi(X-|t|)} / pi^{p+1} * sum_{j<=p} (pi X)^j / j!
  double z = kPi * cutoff;
  double term = 1.0, sum = 1.0;
  for (int j = 1; j <= p; ++j) {
    term *= z / j;
    sum += term;
  }
  return 2.0 * std::exp(-kPi * (cutoff - std::abs(t))) * sum / std::pow(kPi, p + 1);
}

QuadReport quad_check_single(int k, double t, double tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (k < 0) throw std::domain_error("k must be nonnegative");
  QuadReport r;
  const int p = 2 * k + 1;
  r.cutoff = choose_cutoff(p, t, tol);
  const double scale = inv_factorial(p);
  std::function<double(double)> f = [&](double x) { return std::pow(x, p) * scale * kernel_eval(x, t); };
  bool ok = true;
  r.numeric = integrate(f, breakpoints(0.0, r.cutoff, std::abs(t)), tol / 100.0, r.panels_used, ok);
  r.exact = h_closed(k).evaluate(t);
  r.abs_err = std::abs(r.numeric - r.exact);
  r.converged = ok;
  return r;
}

QuadReport quad_check_double(int i, int j, double t, double tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (i < 0 || j < 0) throw std::domain_error("indices must be nonnegative");
  QuadReport r;
  const int px = 2 * i + 1, py = 2 * j + 1;
  // The region x + y > U is bounded by the single-variable tail of degree px + py + 1.
  r.cutoff = choose_cutoff(px + py + 1, t, tol);
  const double U = r.cutoff;
  const double sx = inv_factorial(px), sy = inv_factorial(py);
  const double inner_tol = tol / (100.0 * U);
  bool ok = true;
  int panels = 0;
  std::function<double(double)> outer = [&](double x) {
    std::function<double(double)> inner = [&](double y) { return std::pow(y, py) * sy * kernel_eval(x + y, t); };
    double upper = U - x;
    if (upper <= 0) return 0.0;
    double v = integrate(inner, breakpoints(0.0, upper, std::abs(t) - x), inner_tol, panels, ok);
    return std::pow(x, px) * sx * v;
  };
  int outer_panels = 0;
  r.numeric = integrate(outer, breakpoints(0.0, U, std::abs(t)), tol / 100.0, outer_panels, ok);
  r.panels_used = outer_panels;
  r.exact = h_closed(i + j + 1).evaluate(t);
  r.abs_err = std::abs(r.numeric - r.exact);
  r.converged = ok;
  return r;
}

}  // namespace wpv::kernel
