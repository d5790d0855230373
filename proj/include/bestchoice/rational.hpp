#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bestchoice {

// Exact arithmetic used by the oracle paths. mpq_class keeps fractions
// canonical (lowest terms, positive denominator).
using BigInt = mpz_class;
using Rational = mpq_class;

BigInt big_factorial(unsigned n);

Rational rational_pow(const Rational& base, unsigned exponent);

// Accepts "p/q", plain integers, and decimal literals ("0.25", "2.5e-3"),
// all converted exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace bestchoice
