#include "epi/discrimination.hpp"

#include <algorithm>
#include <string>

#include "epi/errors.hpp"

namespace epi {

namespace {

void require_open_unit(const Real& p, const char* what) {
  if (!(p > 0L) || !(p < 1L)) throw DomainError(std::string(what) + " needs 0 < p < 1, got " + p.str(20));
}

// sum_i a_i ln(a_i / m_i) over aligned vectors; m must dominate a.
Real divergence_aligned(const std::vector<Real>& a, const std::vector<Real>& m, Precision prec) {
  Real d(prec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (m[i].is_zero()) throw InfiniteDivergence("divergence is infinite: reference has no mass where the first pmf does");
    d += a[i] * log(a[i] / m[i]);
  }
  return d;
}

}  // namespace

MixturePair::MixturePair(const IntegerPmf& first, const IntegerPmf& second, const Real& p)
    : offset_(std::min(first.offset(), second.offset())), p_(p), q_(1L - p) {
  if (!(p >= 0L) || !(p <= 1L)) throw DomainError("mixture weight outside [0,1]: " + p.str(20));
  if (first.precision() != second.precision()) throw DomainError("mixture pair: precision mismatch");
  const long hi = std::max(first.last(), second.last());
  const auto n = static_cast<std::size_t>(hi - offset_ + 1);
  first_.reserve(n);
  second_.reserve(n);
  mixture_.reserve(n);
  for (long k = offset_; k <= hi; ++k) {
    first_.push_back(first.at(k));
    second_.push_back(second.at(k));
    mixture_.push_back(p_ * first_.back() + q_ * second_.back());
  }
}

std::vector<Real> MixturePair::ratios() const {
  std::vector<Real> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (mixture_[i].is_zero()) {
      out.emplace_back(mixture_[i].precision());
    } else {
      out.push_back(abs(p_ * first_[i] - q_ * second_[i]) / mixture_[i]);
    }
  }
  return out;
}

Real kl_divergence(const IntegerPmf& P, const IntegerPmf& Q) {
  if (P.precision() != Q.precision()) throw DomainError("kl_divergence: precision mismatch");
  Real d(P.precision());
  for (long k = P.offset(); k <= P.last(); ++k) {
    const Real& pk = P.weights()[static_cast<std::size_t>(k - P.offset())];
    if (pk.is_zero()) continue;
    const Real qk = Q.at(k);
    if (qk.is_zero()) throw InfiniteDivergence("D(P||Q) is infinite: Q(" + std::to_string(k) + ") = 0 < P(k)");
    d += pk * log(pk / qk);
  }
  return d;
}

Real cap_discrimination(const IntegerPmf& P, const IntegerPmf& Q, const Real& p) {
  const MixturePair pair(P, Q, p);
  const Precision prec = P.precision();
  Real c(prec);
  if (!pair.p().is_zero()) c += pair.p() * divergence_aligned(pair.first(), pair.mixture(), prec);
  if (!pair.q().is_zero()) c += pair.q() * divergence_aligned(pair.second(), pair.mixture(), prec);
  return c;
}

Real tri_discrimination(const IntegerPmf& P, const IntegerPmf& Q, const Real& p, long nu) {
  if (nu < 1) throw DomainError("triangular discrimination needs nu >= 1");
  const MixturePair pair(P, Q, p);
  const auto ratios = pair.ratios();
  Real delta(P.precision());
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (ratios[i].is_zero()) continue;
    delta += pair.mixture()[i] * pow(ratios[i], 2 * nu);
  }
  return delta;
}

SeriesEvaluation cap_via_series(const IntegerPmf& P, const IntegerPmf& Q, const Real& p, const Real& tol,
                                long max_terms) {
  require_open_unit(p, "cap_via_series");
  if (!(tol > 0L)) throw DomainError("cap_via_series needs tol > 0");
  const MixturePair pair(P, Q, p);
  const Precision prec = P.precision();

  // Per atom: mass m_i and running power ratio_i^(2nu); Delta_nu = sum m_i ratio_i^(2nu).
  std::vector<Real> mass;
  std::vector<Real> ratio_sq;
  std::vector<Real> power;
  const auto ratios = pair.ratios();
  // Atoms charged by one side only have ratio^2 = 1 and sum to mass * ln 2.
  Real one_sided(prec);
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (ratios[i].is_zero()) continue;
    const Real sq = ratios[i] * ratios[i];
    if (sq == 1L) {
      one_sided += pair.mixture()[i];
      continue;
    }
    mass.push_back(pair.mixture()[i]);
    ratio_sq.push_back(sq);
    power.push_back(sq);
  }

  const Real deficit = Real::ln2(prec) - bernoulli_entropy(pair.p());
  Real weight_tail = Real::ln2(prec);  // ln 2 - sum_{v<=nu} 1/(2v(2v-1))
  Real series = one_sided * Real::ln2(prec);
  for (long nu = 1; nu <= max_terms; ++nu) {
    Real delta(prec);
    for (std::size_t i = 0; i < mass.size(); ++i) {
      delta += mass[i] * power[i];
      power[i] *= ratio_sq[i];
    }
    const Real coeff = Real::ratio(1, 2 * nu * (2 * nu - 1), prec);
    series += delta * coeff;
    weight_tail -= coeff;
    Real tail = delta * weight_tail;
    if (tail < 0L) tail = Real(prec);  // rounding at the last bit
    if (tail <= tol) return {series - deficit, nu, tail};
  }
  throw TruncationError("cap_via_series: tail bound above tolerance after " + std::to_string(max_terms) + " terms");
}

SeriesEvaluation entropy_deficit_series(const Real& p, long terms) {
  if (!(p >= 0L) || !(p <= 1L)) throw DomainError("entropy_deficit_series needs p in [0,1]");
  if (terms < 1) throw DomainError("entropy_deficit_series needs terms >= 1");
  const Precision prec = p.precision();
  const Real x = 2L * p - 1L;  // 2(p - 1/2)
  const Real x2 = x * x;
  Real power(1L, prec);
  Real sum(prec);
  for (long nu = 1; nu <= terms; ++nu) {
    power *= x2;
    sum += power / (2 * nu * (2 * nu - 1));
  }
  // Omitted terms are at most x2^(N+1)/((2N+2)(2N+1)) times a geometric factor.
  const long n = terms + 1;
  Real tail = power * x2 / (2 * n * (2 * n - 1));
  if (x2 < 1L) {
    tail /= (1L - x2);
  } else {
    tail = Real::infinity(prec);
  }
  return {sum, terms, tail};
}

Real binomial_step_c(long n, const Real& p) {
  require_open_unit(p, "binomial_step_c");
  if (n < 0) throw DomainError("binomial_step_c needs n >= 0");
  const Precision prec = p.precision();
  const IntegerPmf next = binomial_pmf(n + 1, p);
  const Real hp = bernoulli_entropy(p);
  Real c(prec);
  for (long i = 0; i <= n + 1; ++i) {
    const Real x = Real::ratio(i, n + 1, prec);
    c += (hp - bernoulli_entropy(x)) * next.weights()[static_cast<std::size_t>(i)];
  }
  return c;
}

Real binomial_ratio(long i, long n, Precision prec) { return to_real(binomial_ratio_exact(i, n), prec); }

Rational binomial_ratio_exact(long i, long n) {
  if (n < 0 || i < 0 || i > n + 1) throw DomainError("binomial_ratio needs 0 <= i <= n+1");
  const long num = 2 * i - n - 1;
  return make_rational(num < 0 ? -num : num, n + 1);
}

}  // namespace epi
