#pragma once

#include <gtest/gtest.h>

#include <string>

#include "epi/rational.hpp"
#include "epi/real.hpp"

namespace epi::test {

inline Precision P50{50};

inline Real R(const char* text, Precision prec = P50) { return Real::parse(text, prec); }

inline ::testing::AssertionResult Near(const Real& a, const Real& b, const Real& tol) {
  const Real d = abs(a - b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << a.str(30) << " vs " << b.str(30) << " differ by " << d.str(6)
                                       << " > " << tol.str(6);
}

inline ::testing::AssertionResult Near(const Real& a, const char* b, const char* tol) {
  return Near(a, R(b, a.precision()), R(tol, a.precision()));
}

// C(n,k) p^k (1-p)^(n-k) in exact arithmetic.
inline Rational binomial_weight(long n, long k, const Rational& p) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  Rational w = c;
  for (long i = 0; i < k; ++i) w *= p;
  for (long i = 0; i < n - k; ++i) w *= Rational(1 - p);
  return w;
}

}  // namespace epi::test
