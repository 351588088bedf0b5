#pragma once

#include <gmpxx.h>

#include <string>

namespace tritile {

/// Arbitrary-precision rational in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or a decimal such as "0.25"; throws ParseError otherwise.
Rational parse_rational(const std::string& s);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
double to_double(const Rational& r);
/// p/q reduced to canonical form; mpq_class(p, q) alone does not reduce.
Rational ratio(const Integer& p, const Integer& q);
/// Exact rational value of a double (binary expansion).
Rational from_double(double x);

}  // namespace tritile
