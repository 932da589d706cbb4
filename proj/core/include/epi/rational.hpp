#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "epi/real.hpp"

namespace epi {

/// Exact fraction. gmp keeps results canonical (gcd 1, positive denominator)
/// after every arithmetic operation; make_rational canonicalizes raw input.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
/// Accepts "a", "a/b" and finite decimals such as "4.438" or "-0.25".
Rational parse_rational(std::string_view text);
/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& x);

Real to_real(const Rational& x, Precision prec);

Integer factorial(unsigned long n);

}  // namespace epi
