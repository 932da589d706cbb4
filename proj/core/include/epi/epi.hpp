#pragma once

#include <optional>
#include <vector>

#include "epi/pmf.hpp"
#include "epi/rational.hpp"
#include "epi/real.hpp"

namespace epi {

/// f(m,n) = e^{2H(X^(m+n))} - e^{2H(X^(m))} - e^{2H(X^(n))}.
struct EpiReport {
  long m = 0;
  long n = 0;
  std::optional<Real> p;  // empty for non-binomial bases
  Real gap;
  bool holds = false;  // gap >= -tolerance
  int precision = kDefaultDigits;
};

struct StepCheck {
  long n = 0;
  Real margin;  // H[B(n+1,p)] - H[B(n,p)] - ln((n+1)/n) / 2
  bool holds = false;
};

struct ThresholdReport {
  Real p;
  Real t;
  std::optional<long> empirical_n0;  // empty: the margin still fails at the cap
  long formula_a = 0;                // ceil(111/25 t + 7)
  long formula_b = 0;                // ceil(t^2 + 117/50 t + 7)
  long cap = 0;
};

struct SemiAsymptoticReport {
  long m = 0;
  Real entropy;   // H[B(m,p)]
  Real gaussian;  // ln(2 pi e m p (1-p)) / 2
  bool holds = false;
};

inline const Rational kSlopeA = make_rational(111, 25);
inline const Rational kSlopeAPrime = make_rational(2219, 500);
inline const Rational kSlopeB = make_rational(117, 50);

EpiReport epi_gap(long m, long n, const Real& p);
/// Gap from precomputed entropies H[m+n], H[m], H[n].
Real gap_from_entropies(const Real& h_sum, const Real& h_m, const Real& h_n);

StepCheck sufficient_step_check(long n, const Real& p);
/// Margins for n = 1..cap from a single binomial ladder.
std::vector<StepCheck> step_margins(long cap, const Real& p);

long formula_threshold_a(const Real& t);
long formula_threshold_b(const Real& t);
ThresholdReport empirical_threshold(const Real& p, long cap);

/// Row-major table, rows m = 1..m_max, columns n = 1..n_max.
std::vector<std::vector<EpiReport>> epi_grid_check(long m_max, long n_max, const Real& p);

SemiAsymptoticReport semi_asymptotic_condition(long m, const Real& p);

/// n in [2, cap] where the margin sign differs from the last nonzero sign seen
/// before n. Margins within tolerance of zero carry no sign.
std::vector<long> zero_crossing_scan(const Real& p, long cap);

EpiReport iid_epi_gap(const IntegerPmf& base, long m, long n);

}  // namespace epi
