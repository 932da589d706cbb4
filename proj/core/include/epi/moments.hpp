#pragma once

#include <map>
#include <vector>

#include "epi/pmf.hpp"
#include "epi/rational.hpp"
#include "epi/real.hpp"

namespace epi {

/// Cumulants kappa_1..kappa_K of a base distribution.
class CumulantSet {
 public:
  explicit CumulantSet(std::vector<Real> kappa);

  /// kappa_g, 1-based.
  [[nodiscard]] const Real& operator()(int g) const;
  [[nodiscard]] int order() const { return static_cast<int>(kappa_.size()); }

 private:
  std::vector<Real> kappa_;
};

/// One term of a Faa di Bruno sum: parts g_a with multiplicities i_a.
struct PartitionTerm {
  std::vector<int> parts;           // g_1 > g_2 > ... (distinct, descending)
  std::vector<int> multiplicities;  // i_1, i_2, ...

  /// sum i_a g_a
  [[nodiscard]] int total() const;
  /// sum i_a, the power of j the term contributes.
  [[nodiscard]] int count() const;
  /// sum i_a (g_a - 1)
  [[nodiscard]] int excess() const;
  /// k! / prod(i_a! (g_a!)^i_a) with k = total().
  [[nodiscard]] Integer weight() const;
};

/// All partitions of k into parts >= min_part, in lexicographic order
/// (largest parts first).
std::vector<PartitionTerm> partitions(int k, int min_part = 1);

/// Central moment mu_k^(j) of a j-fold iid sum, as a polynomial in j.
class MomentPolynomial {
 public:
  MomentPolynomial(int k, std::map<int, Real> coeffs);

  [[nodiscard]] int order() const { return k_; }
  [[nodiscard]] const std::map<int, Real>& coeffs() const { return coeffs_; }
  [[nodiscard]] int degree() const;
  [[nodiscard]] Real operator()(long j) const;

 private:
  int k_;
  std::map<int, Real> coeffs_;
};

/// Cumulants from raw moments m_1..m_K (standard recurrence).
CumulantSet cumulants_from_raw(const std::vector<Real>& raw);
/// Cumulants of an arbitrary integer pmf up to order K.
CumulantSet cumulants_of(const IntegerPmf& base, int K);
/// Bernoulli(p) cumulants; raw moments all equal p. Needs 0 < p < 1, K >= 2.
CumulantSet bernoulli_cumulants(const Real& p, int K);

/// Closed-form central moments of B(n,p) in n and r = p - 1/2, k in 2..7.
Real central_moment_closed(long n, const Real& p, int k);
/// sum_i (i - mean)^k P(i)
Real central_moment_brute(const IntegerPmf& pmf, int k, const Real& mean);

/// mu_k^(j) from cumulants; partitions using a part g = 1 are dropped because
/// the moments are central.
MomentPolynomial faa_di_bruno_poly(int k, const CumulantSet& cumulants);

/// F^(k)(x) = (d^k/dx^k)[H(p) - H(x)] / k!, x in (0,1).
Real taylor_coeff(int k, const Real& x);
/// Same for k >= 2 in exact arithmetic.
Rational taylor_coeff_exact(int k, const Rational& x);

/// sum_{k=1}^{2l+1} F^(k)(p) (x - p)^k, a lower bound on H(p) - H(x).
Real taylor_lower_bound(const Real& x, const Real& p, int l);

/// Gamma_l(j) = sum_{k=1}^{2l+1} F^(k)(p) j^-k mu_k^(j): a lower bound on
/// H[B(j,p)] - H[B(j-1,p)].
Real gamma_l(long j, const Real& p, int l);

/// Sum_{j=1}^n Gamma_l(j), a lower bound on H[B(n,p)].
Real cumulative_gamma_bound(long n, const Real& p, int l);
/// Running sums Sum_{j=1}^m Gamma_l(j) for m = 0..n.
std::vector<Real> cumulative_gamma_profile(long n, const Real& p, int l);

/// c(w): partition terms with sum i_a(g_a - 1) = w (parts >= 2), weighted by
/// cumulant products and F^(k)(p) with k = sum i_a g_a.
Real c_coeff(int w, const Real& p);
Rational c_coeff_exact(int w, const Rational& p);

/// Sum_{w=1}^W c(w) H_n^(w), with H_n^(w) = sum_{j<=n} j^-w. W must be even.
Real harmonic_lower_bound(long n, const Real& p, int W);

}  // namespace epi
