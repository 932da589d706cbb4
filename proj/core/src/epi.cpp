#include "epi/epi.hpp"

#include <algorithm>
#include <string>

#include "epi/errors.hpp"

namespace epi {

namespace {

void require_open_unit(const Real& p, const char* what) {
  if (!(p > 0L) || !(p < 1L)) throw DomainError(std::string(what) + " needs 0 < p < 1, got " + p.str(20));
}

void require_probability(const Real& p, const char* what) {
  if (!(p >= 0L) || !(p <= 1L)) throw DomainError(std::string(what) + " needs p in [0,1], got " + p.str(20));
}

Real entropy_power(const Real& h) { return exp(2L * h); }

int sign_with_tolerance(const Real& x, const Real& eps) {
  if (x > eps) return 1;
  if (x < -eps) return -1;
  return 0;
}


}  // namespace

Real gap_from_entropies(const Real& h_sum, const Real& h_m, const Real& h_n) {
  // Subtract the smaller power first so the result is symmetric bit for bit.
  const Real a = entropy_power(h_m);
  const Real b = entropy_power(h_n);
  const Real& lo = a <= b ? a : b;
  const Real& hi = a <= b ? b : a;
  return entropy_power(h_sum) - lo - hi;
}

EpiReport epi_gap(long m, long n, const Real& p) {
  if (m < 0 || n < 0) throw DomainError("epi_gap needs m, n >= 0");
  require_probability(p, "epi_gap");
  const auto h = binomial_entropies(m + n, p);
  EpiReport report{m, n, p, gap_from_entropies(h[static_cast<std::size_t>(m + n)], h[static_cast<std::size_t>(m)],
                                               h[static_cast<std::size_t>(n)]),
                   false, p.precision().digits};
  report.holds = report.gap >= -tolerance(p.precision());
  return report;
}

std::vector<StepCheck> step_margins(long cap, const Real& p) {
  if (cap < 1) throw DomainError("step_margins needs cap >= 1");
  require_probability(p, "step_margins");
  const Precision prec = p.precision();
  const Real eps = tolerance(prec);
  const auto h = binomial_entropies(cap + 1, p);
  std::vector<StepCheck> out;
  out.reserve(static_cast<std::size_t>(cap));
  for (long n = 1; n <= cap; ++n) {
    const auto i = static_cast<std::size_t>(n);
    Real margin = h[i + 1] - h[i] - log(Real::ratio(n + 1, n, prec)) / 2L;
    const bool holds = margin >= -eps;
    out.push_back({n, std::move(margin), holds});
  }
  return out;
}

StepCheck sufficient_step_check(long n, const Real& p) {
  if (n < 1) throw DomainError("sufficient_step_check needs n >= 1");
  require_probability(p, "sufficient_step_check");
  const Precision prec = p.precision();
  BinomialLadder ladder(p);
  for (long j = 0; j < n; ++j) ladder.step();
  const Real h_n = ladder.entropy();
  ladder.step();
  Real margin = ladder.entropy() - h_n - log(Real::ratio(n + 1, n, prec)) / 2L;
  const bool holds = margin >= -tolerance(prec);
  return {n, std::move(margin), holds};
}

long formula_threshold_a(const Real& t) {
  return ceil_to_long(to_real(kSlopeA, t.precision()) * t + 7L);
}

long formula_threshold_b(const Real& t) {
  return ceil_to_long(t * t + to_real(kSlopeB, t.precision()) * t + 7L);
}

ThresholdReport empirical_threshold(const Real& p, long cap) {
  require_open_unit(p, "empirical_threshold");
  if (cap < 1) throw DomainError("empirical_threshold needs cap >= 1");
  const Real t = omega(p);
  ThresholdReport report{p, t, std::nullopt, formula_threshold_a(t), formula_threshold_b(t), cap};
  const auto margins = step_margins(cap, p);
  long first = 1;
  for (const auto& step : margins) {
    if (!step.holds) first = step.n + 1;
  }
  if (first <= cap) report.empirical_n0 = first;
  return report;
}

std::vector<std::vector<EpiReport>> epi_grid_check(long m_max, long n_max, const Real& p) {
  if (m_max < 1 || n_max < 1) throw DomainError("epi_grid_check needs m_max, n_max >= 1");
  require_probability(p, "epi_grid_check");
  const Real eps = tolerance(p.precision());
  const auto h = binomial_entropies(m_max + n_max, p);
  std::vector<std::vector<EpiReport>> table;
  table.reserve(static_cast<std::size_t>(m_max));
  for (long m = 1; m <= m_max; ++m) {
    auto& row = table.emplace_back();
    row.reserve(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
      Real gap = gap_from_entropies(h[static_cast<std::size_t>(m + n)], h[static_cast<std::size_t>(m)],
                                    h[static_cast<std::size_t>(n)]);
      const bool holds = gap >= -eps;
      row.push_back({m, n, p, std::move(gap), holds, p.precision().digits});
    }
  }
  return table;
}

SemiAsymptoticReport semi_asymptotic_condition(long m, const Real& p) {
  if (m < 1) throw DomainError("semi_asymptotic_condition needs m >= 1");
  require_open_unit(p, "semi_asymptotic_condition");
  const Precision prec = p.precision();
  Real h = entropy(binomial_pmf(m, p));
  Real gaussian = log(2L * Real::pi(prec) * exp(Real(1L, prec)) * m * p * (1L - p)) / 2L;
  const bool holds = h < gaussian;
  return {m, std::move(h), std::move(gaussian), holds};
}

std::vector<long> zero_crossing_scan(const Real& p, long cap) {
  const auto margins = step_margins(cap, p);
  const Real eps = tolerance(p.precision());
  std::vector<long> out;
  int last = 0;
  for (const auto& step : margins) {
    const int s = sign_with_tolerance(step.margin, eps);
    if (s == 0) continue;
    if (last != 0 && s != last) out.push_back(step.n);
    last = s;
  }
  return out;
}

EpiReport iid_epi_gap(const IntegerPmf& base, long m, long n) {
  if (m < 0 || n < 0) throw DomainError("iid_epi_gap needs m, n >= 0");
  const Precision prec = base.precision();
  const Real h_m = entropy(iid_sum_pmf(base, m));
  const Real h_n = m == n ? h_m : entropy(iid_sum_pmf(base, n));
  const Real h_sum = entropy(iid_sum_pmf(base, m + n));
  EpiReport report{m, n, std::nullopt, gap_from_entropies(h_sum, h_m, h_n), false, prec.digits};
  report.holds = report.gap >= -tolerance(prec);
  return report;
}

}  // namespace epi
