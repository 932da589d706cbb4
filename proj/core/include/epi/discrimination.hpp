#pragma once

#include <vector>

#include "epi/pmf.hpp"
#include "epi/rational.hpp"
#include "epi/real.hpp"

namespace epi {

/// Two pmfs aligned on the union of their supports together with the mixture
/// M = p P + q Q. The first argument is always the one weighted by p.
class MixturePair {
 public:
  MixturePair(const IntegerPmf& first, const IntegerPmf& second, const Real& p);

  [[nodiscard]] long offset() const { return offset_; }
  [[nodiscard]] std::size_t size() const { return first_.size(); }
  [[nodiscard]] const std::vector<Real>& first() const { return first_; }
  [[nodiscard]] const std::vector<Real>& second() const { return second_; }
  [[nodiscard]] const std::vector<Real>& mixture() const { return mixture_; }
  [[nodiscard]] const Real& p() const { return p_; }
  [[nodiscard]] const Real& q() const { return q_; }

  /// |p p_i - q q_i| / (p p_i + q q_i), zero where the mixture vanishes.
  [[nodiscard]] std::vector<Real> ratios() const;

 private:
  long offset_;
  Real p_;
  Real q_;
  std::vector<Real> first_;
  std::vector<Real> second_;
  std::vector<Real> mixture_;
};

struct SeriesEvaluation {
  Real partial_sum;
  long terms_used = 0;
  Real tail_bound;
};

inline constexpr long kMaxSeriesTerms = 10'000;

/// D(P || Q) in nats. Throws InfiniteDivergence if P charges a point Q does not.
Real kl_divergence(const IntegerPmf& P, const IntegerPmf& Q);

/// C^(p)(P,Q) = p D(P||M) + q D(Q||M).
Real cap_discrimination(const IntegerPmf& P, const IntegerPmf& Q, const Real& p);

/// Delta_nu^(p)(P,Q) = sum |p p_i - q q_i|^(2nu) / (p p_i + q q_i)^(2nu-1).
Real tri_discrimination(const IntegerPmf& P, const IntegerPmf& Q, const Real& p, long nu);

/// C^(p)(P,Q) through sum_nu Delta_nu / (2nu(2nu-1)) - [ln 2 - H(p)].
///
/// Stops at the first nu whose tail bound
///   Delta_nu * (ln 2 - sum_{v<=nu} 1/(2v(2v-1)))
/// is <= tol; the bound is valid because Delta_nu is non-increasing in nu.
/// Atoms charged by one side only are summed in closed form.
/// Throws TruncationError if max_terms is reached first.
SeriesEvaluation cap_via_series(const IntegerPmf& P, const IntegerPmf& Q, const Real& p, const Real& tol,
                                long max_terms = kMaxSeriesTerms);

/// ln 2 - H(p) as sum_{nu<=terms} 2^(2nu) (p-1/2)^(2nu) / (2nu(2nu-1)), with the
/// geometric bound on the omitted tail.
SeriesEvaluation entropy_deficit_series(const Real& p, long terms);

/// H[B(n+1,p)] - H[B(n,p)] written as sum_i [H(p) - H(i/(n+1))] P_{B(n+1,p)}(i).
/// Throws DomainError unless 0 < p < 1.
Real binomial_step_c(long n, const Real& p);

/// |2i - n - 1| / (n + 1), the pointwise ratio for the pair (B(n,p)+1, B(n,p)).
/// Throws DomainError unless 0 <= i <= n+1.
Real binomial_ratio(long i, long n, Precision prec);
Rational binomial_ratio_exact(long i, long n);

}  // namespace epi
