#include "wpv/numkit.hpp"

#include <mutex>
#include <stdexcept>

namespace wpv::numkit {

namespace {

// b_n = B_{2n}/(2n)! solves
//   sum_{k=0}^{n} b_{n-k} 4^{-k}/(2k+1)! = 4^{-n}/(2n)!
// which is the defining series multiplied through by 2 sinh(z/2)/z.
class BernoulliTable {
 public:
  Rational get(int m) {
    std::lock_guard lock(mutex_);
    while (static_cast<int>(scaled_.size()) <= m) extend();
    return scaled_[static_cast<std::size_t>(m)] * Rational(factorial(2 * m));
  }

 private:
  void extend() {
    const int n = static_cast<int>(scaled_.size());
    auto quarter_pow = [](int k) { return make_rational(BigInt(1), BigInt(1) << (2 * k)); };
    Rational rhs = quarter_pow(n) / Rational(factorial(2 * n));
    for (int k = 1; k <= n; ++k)
      rhs -= scaled_[static_cast<std::size_t>(n - k)] * quarter_pow(k) / Rational(factorial(2 * k + 1));
    scaled_.push_back(rhs);
  }

  std::mutex mutex_;
  std::vector<Rational> scaled_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace

Rational bernoulli(int m) {
  if (m < 0) throw std::domain_error("bernoulli index must be nonnegative");
  return bernoulli_table().get(m);
}

BigInt double_factorial(int n) {
  if (n < -1 || n % 2 == 0) throw std::domain_error("double_factorial expects odd n >= -1, got " + std::to_string(n));
  BigInt out = 1;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

Rational alpha_coeff(int i) {
  if (i < 0) return 0;
  BigInt num = 1;
  num <<= i;
  if (i % 2 == 1) num = -num;
  return make_rational(num, factorial(2 * i + 1));
}

Rational beta_coeff(int i) {
  if (i < 0) return 0;
  BigInt pow2 = BigInt(1) << i;
  BigInt factor = (BigInt(1) << (2 * i)) - 2;
  Rational out = Rational(pow2 * factor) * bernoulli(i) / Rational(factorial(2 * i));
  // (-1)^(i-1)
  if (i % 2 == 0) out = -out;
  return out;
}

Rational gamma_shift_coeff(int j) {
  if (j < 2) throw std::domain_error("gamma_shift_coeff defined for j >= 2");
  return -Rational(double_factorial(2 * j - 1)) * alpha_coeff(j - 1);
}

CoeffTable coeff_table(int n) {
  CoeffTable table;
  for (int i = 0; i <= n; ++i) {
    table.alpha.push_back(alpha_coeff(i));
    table.beta.push_back(beta_coeff(i));
    table.bernoulli.push_back(bernoulli(i));
    table.gamma_coeff.push_back(i >= 2 ? gamma_shift_coeff(i) : Rational(0));
  }
  return table;
}

}  // namespace wpv::numkit
