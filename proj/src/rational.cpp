#include "wpv/rational.hpp"

#include <stdexcept>

namespace wpv {

Rational make_rational(const BigInt& p, const BigInt& q) {
  if (q == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  std::size_t slash = text.find('/');
  auto digits_only = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (text[i] < '0' || text[i] > '9') return false;
    return true;
  };
  std::size_t num_end = slash == std::string_view::npos ? text.size() : slash;
  if (!digits_only(start, num_end) ||
      (slash != std::string_view::npos && !digits_only(slash + 1, text.size())))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  BigInt p(std::string(text.substr(start, num_end - start)));
  if (text.front() == '-') p = -p;
  BigInt q = 1;
  if (slash != std::string_view::npos) q = BigInt(std::string(text.substr(slash + 1)));
  return make_rational(p, q);
}

BigInt factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace wpv
