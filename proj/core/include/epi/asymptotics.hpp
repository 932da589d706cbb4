#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epi/moments.hpp"
#include "epi/pmf.hpp"
#include "epi/real.hpp"

namespace epi {

/// Largest support (number of atoms) an n-fold sum may have before
/// BudgetExceeded is thrown.
inline constexpr long kDefaultSupportBudget = 1L << 16;

/// g(n) = H(X^(n)) - ln(2 pi e n sigma^2) / 2 for a fixed base law.
struct KnesslProfile {
  std::string base;
  Real sigma2;
  CumulantSet kappa;
  std::map<long, Real> g_values;
  std::optional<long> onset;  // smallest listed n with g < 0 from there on
};

/// g(n) ~ -constant / n^exponent
struct LeadingTerm {
  Real constant;
  int exponent = 0;
  int cumulant_order = 0;  // first j >= 3 with kappa_j != 0
};

struct LeadingFit {
  double constant = 0;
  double exponent = 0;
  bool monotone = true;  // false: |g| not decreasing over the range, fit is suspect
};

Real knessl_g(const IntegerPmf& base, long n, long budget = kDefaultSupportBudget);

KnesslProfile knessl_profile(const IntegerPmf& base, const std::vector<long>& ns, std::string label = "",
                             long budget = kDefaultSupportBudget);

/// kappa_j^2 / (2 j! sigma^(2j)) with exponent j - 2, for the first nonzero
/// cumulant of order j >= 3 (searched up to max_order).
LeadingTerm predicted_leading_term(const IntegerPmf& base, int max_order = 12);

/// Least squares on ln|g(n)| = ln C - k ln n. Needs at least 4 points.
LeadingFit leading_constant_fit(const IntegerPmf& base, const std::vector<long>& ns,
                                long budget = kDefaultSupportBudget);
LeadingFit fit_power_law(const std::vector<long>& ns, const std::vector<Real>& g);

struct SmoothedEntropy {
  long n = 0;
  Real sigma;
  Real h_value;           // differential entropy, nats
  Real quadrature_error;  // estimated absolute error of h_value
};

/// Differential entropy of sum_k P(k) N(k, sigma^2). Throws DomainError for
/// sigma <= 0 or tol <= 0, TruncationError if tol cannot be met.
SmoothedEntropy gaussian_smoothed_entropy(const IntegerPmf& base_sum, const Real& sigma, const Real& tol);

struct TulinoRow {
  long n = 0;
  Real increment;   // h(S^(n)) - h(S^(n-1))
  Real half_log;    // ln(n/(n-1)) / 2
  Real full_log;    // ln(n/(n-1))
  Real quadrature_error;
  bool half_holds = false;
  bool full_holds = false;
};

/// S^(n) = B(n,p) + N(0, n sigma^2) for n in [n_min, n_max]; n_min >= 2.
std::vector<TulinoRow> tulino_verdu_compare(const Real& p, const Real& sigma, long n_min, long n_max,
                                            const Real& tol);

}  // namespace epi
