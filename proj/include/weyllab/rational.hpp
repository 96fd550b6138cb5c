#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace weyllab {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical a/b (mpq_class(a, b) alone does not reduce).
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text);

// p-adic valuation; returns a large sentinel for zero.
constexpr int kInfiniteValuation = 1 << 20;
int valuation(const Integer& z, long p);
int valuation(const Rational& q, long p);

Integer binomial(long n, long k);
Integer factorial(long n);

long gcd_long(long a, long b);
long ipow(long base, int exp);

}  // namespace weyllab
