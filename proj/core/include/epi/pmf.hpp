#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "epi/real.hpp"

namespace epi {

/// Probability mass function on the consecutive integers
/// offset, offset+1, ..., offset+size()-1. Zero weights are allowed inside.
class IntegerPmf {
 public:
  /// Validates non-negativity, common precision and unit mass (within
  /// tolerance(precision)). Throws DomainError otherwise.
  IntegerPmf(long offset, std::vector<Real> weights);

  static IntegerPmf point_mass(long at, Precision prec);
  /// Uniform on {lo, ..., hi}.
  static IntegerPmf uniform(long lo, long hi, Precision prec);

  [[nodiscard]] long offset() const { return offset_; }
  [[nodiscard]] long last() const { return offset_ + static_cast<long>(weights_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return weights_.size(); }
  [[nodiscard]] Precision precision() const { return prec_; }
  [[nodiscard]] std::span<const Real> weights() const { return weights_; }

  /// Weight at absolute support point k; zero outside the stored range.
  [[nodiscard]] Real at(long k) const;

  [[nodiscard]] Real mass() const;
  [[nodiscard]] Real mean() const;
  [[nodiscard]] Real variance() const;

 private:
  struct Unchecked {};
  IntegerPmf(Unchecked, long offset, std::vector<Real> weights, Precision prec);

  friend IntegerPmf convolve(const IntegerPmf&, const IntegerPmf&);
  friend IntegerPmf shift(const IntegerPmf&, long);

  long offset_;
  Precision prec_;
  std::vector<Real> weights_;
};

/// Bernoulli success probability with its derived quantities.
class BernoulliParam {
 public:
  /// Throws DomainError unless 0 <= p <= 1.
  explicit BernoulliParam(Real p);

  [[nodiscard]] const Real& p() const { return p_; }
  [[nodiscard]] const Real& q() const { return q_; }
  /// r = p - 1/2
  [[nodiscard]] Real r() const;
  /// t = omega(p); throws DomainError for p in {0, 1}.
  [[nodiscard]] Real t() const;
  [[nodiscard]] bool degenerate() const { return p_.is_zero() || q_.is_zero(); }

 private:
  Real p_;
  Real q_;
};

/// B(n, p) on {0..n}, built by applying the one-step mixing recurrence
/// P_{n+1}(k) = p P_n(k-1) + q P_n(k) n times. Throws DomainError for n < 0
/// or p outside [0, 1].
IntegerPmf binomial_pmf(long n, const Real& p);
IntegerPmf binomial_pmf(long n, const Real& p, Precision prec);

/// Law of the independent sum. Throws DomainError on precision mismatch.
IntegerPmf convolve(const IntegerPmf& a, const IntegerPmf& b);

/// Law of X + k.
IntegerPmf shift(const IntegerPmf& a, long k);

/// Discrete entropy in nats.
Real entropy(const IntegerPmf& a);

/// -p ln p - (1-p) ln(1-p), nats.
Real bernoulli_entropy(const Real& p);

/// (2p-1)^2 / (p(1-p)); throws DomainError unless 0 < p < 1.
Real omega(const Real& p);

/// n-fold self-convolution by repeated squaring; n = 0 gives the point mass at 0.
IntegerPmf iid_sum_pmf(const IntegerPmf& base, long n);

/// Incremental B(0,p), B(1,p), ... generator. Each step costs O(n).
class BinomialLadder {
 public:
  explicit BinomialLadder(const Real& p);

  [[nodiscard]] long trials() const { return static_cast<long>(weights_.size()) - 1; }
  [[nodiscard]] std::span<const Real> weights() const { return weights_; }
  [[nodiscard]] Real entropy() const;
  void step();

 private:
  Real p_;
  Real q_;
  Real ln_p_;
  Real ln_q_;
  std::vector<Real> ln_factorial_;  // ln j! for j = 0..trials
  std::vector<Real> weights_;
};

/// H[B(n,p)] for n = 0..n_max.
std::vector<Real> binomial_entropies(long n_max, const Real& p);

}  // namespace epi
