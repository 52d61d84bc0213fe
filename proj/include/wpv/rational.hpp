#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace wpv {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds p/q in lowest terms. Throws std::invalid_argument when q == 0.
Rational make_rational(const BigInt& p, const BigInt& q = 1);

inline Rational make_rational(long p, long q) { return make_rational(BigInt(p), BigInt(q)); }

/// "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

BigInt factorial(int n);

}  // namespace wpv
