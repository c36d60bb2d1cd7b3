#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fpnf {

// GMP rationals are kept canonical (lowest terms, positive denominator)
// by every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "num/den" or "num" in base 10. Throws Error(MalformedDocument).
Rational parse_rational(std::string_view text);

// Always "num/den", even for integers.
std::string format_rational(const Rational& q);

// n/d in lowest terms. mpq_class(n, d) alone does not canonicalize.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned n);

}  // namespace fpnf
