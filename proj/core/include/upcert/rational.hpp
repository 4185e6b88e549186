#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace upcert {

/// Arbitrary-precision rational, always canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p" or "p/q" with optional leading sign.
Rational parse_rational(std::string_view text);

/// Smallest power of two not below |q|, as an exponent; q must be nonzero.
long ceil_log2(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);

}  // namespace upcert
