#include "epi/pmf.hpp"

#include <string>
#include <utility>

#include "epi/errors.hpp"

namespace epi {

namespace {

void require_probability(const Real& p) {
  if (!(p >= 0L) || !(p <= 1L)) throw DomainError("probability outside [0,1]: " + p.str(20));
}

// -sum w ln w. Weights below 2^(-2 bits) add less than the rounding error of
// the sum and are skipped.
Real entropy_of(std::span<const Real> weights, Precision prec) {
  Real h(prec);
  Real term(prec);
  const mpfr_exp_t floor = -2 * static_cast<mpfr_exp_t>(prec.bits());
  for (const auto& w : weights) {
    if (w.is_zero() || mpfr_get_exp(w.get()) < floor) continue;
    mpfr_log(term.get(), w.get(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), w.get(), MPFR_RNDN);
    mpfr_sub(h.get(), h.get(), term.get(), MPFR_RNDN);
  }
  return h;
}

}  // namespace

IntegerPmf::IntegerPmf(Unchecked, long offset, std::vector<Real> weights, Precision prec)
    : offset_(offset), prec_(prec), weights_(std::move(weights)) {}

IntegerPmf::IntegerPmf(long offset, std::vector<Real> weights) : offset_(offset), weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("pmf needs at least one support point");
  prec_ = weights_.front().precision();
  Real total(prec_);
  for (const auto& w : weights_) {
    if (w.precision() != prec_) throw DomainError("pmf weights carry mixed precisions");
    if (w.sign() < 0 || !w.is_finite()) throw DomainError("pmf weight is negative or not finite: " + w.str(20));
    total += w;
  }
  if (abs(total - 1L) > tolerance(prec_)) throw DomainError("pmf weights do not sum to 1: " + total.str(20));
}

IntegerPmf IntegerPmf::point_mass(long at, Precision prec) {
  std::vector<Real> w;
  w.emplace_back(1L, prec);
  return {Unchecked{}, at, std::move(w), prec};
}

IntegerPmf IntegerPmf::uniform(long lo, long hi, Precision prec) {
  if (hi < lo) throw DomainError("empty uniform support");
  const long count = hi - lo + 1;
  std::vector<Real> w(static_cast<std::size_t>(count), Real::ratio(1, count, prec));
  return {Unchecked{}, lo, std::move(w), prec};
}

Real IntegerPmf::at(long k) const {
  if (k < offset_ || k > last()) return Real(prec_);
  return weights_[static_cast<std::size_t>(k - offset_)];
}

Real IntegerPmf::mass() const {
  Real total(prec_);
  for (const auto& w : weights_) total += w;
  return total;
}

Real IntegerPmf::mean() const {
  Real m(prec_);
  long k = offset_;
  for (const auto& w : weights_) m += w * k++;
  return m;
}

Real IntegerPmf::variance() const {
  const Real mu = mean();
  Real v(prec_);
  long k = offset_;
  for (const auto& w : weights_) {
    const Real d = Real(k++, prec_) - mu;
    v += w * d * d;
  }
  return v;
}

BernoulliParam::BernoulliParam(Real p) : p_(std::move(p)), q_(1L - p_) { require_probability(p_); }

Real BernoulliParam::r() const { return p_ - Real::ratio(1, 2, p_.precision()); }

Real BernoulliParam::t() const { return omega(p_); }

IntegerPmf binomial_pmf(long n, const Real& p) { return binomial_pmf(n, p, p.precision()); }

IntegerPmf binomial_pmf(long n, const Real& p, Precision prec) {
  if (n < 0) throw DomainError("binomial needs n >= 0, got " + std::to_string(n));
  require_probability(p);
  BinomialLadder ladder(p.at(prec));
  for (long i = 0; i < n; ++i) ladder.step();
  return IntegerPmf(0, {ladder.weights().begin(), ladder.weights().end()});
}

IntegerPmf convolve(const IntegerPmf& a, const IntegerPmf& b) {
  if (a.precision() != b.precision()) throw DomainError("convolve: precision mismatch");
  const Precision prec = a.precision();
  std::vector<Real> out(a.size() + b.size() - 1, Real(prec));
  Real term(prec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.weights_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpfr_mul(term.get(), a.weights_[i].get(), b.weights_[j].get(), MPFR_RNDN);
      mpfr_add(out[i + j].get(), out[i + j].get(), term.get(), MPFR_RNDN);
    }
  }
  return {IntegerPmf::Unchecked{}, a.offset() + b.offset(), std::move(out), prec};
}

IntegerPmf shift(const IntegerPmf& a, long k) { return {IntegerPmf::Unchecked{}, a.offset() + k, a.weights_, a.prec_}; }

Real entropy(const IntegerPmf& a) { return entropy_of(a.weights(), a.precision()); }

Real bernoulli_entropy(const Real& p) {
  require_probability(p);
  return -(xlogx(p) + xlogx(1L - p));
}

Real omega(const Real& p) {
  if (!(p > 0L) || !(p < 1L)) throw DomainError("omega(p) needs 0 < p < 1, got " + p.str(20));
  const Real d = 2L * p - 1L;
  return d * d / (p * (1L - p));
}

IntegerPmf iid_sum_pmf(const IntegerPmf& base, long n) {
  if (n < 0) throw DomainError("iid_sum_pmf needs n >= 0");
  IntegerPmf result = IntegerPmf::point_mass(0, base.precision());
  IntegerPmf power = base;
  while (n > 0) {
    if (n & 1) result = convolve(result, power);
    n >>= 1;
    if (n > 0) power = convolve(power, power);
  }
  return result;
}

BinomialLadder::BinomialLadder(const Real& p)
    : p_(p), q_(1L - p), ln_p_(p.precision()), ln_q_(p.precision()) {
  require_probability(p);
  if (!p_.is_zero()) ln_p_ = log(p_);
  if (!q_.is_zero()) ln_q_ = log(q_);
  ln_factorial_.emplace_back(p.precision());
  weights_.emplace_back(1L, p.precision());
}

void BinomialLadder::step() {
  ln_factorial_.push_back(ln_factorial_.back() + log(Real(static_cast<long>(weights_.size()), p_.precision())));
  // In place from the top: new[k] = p old[k-1] + q old[k].
  weights_.emplace_back(weights_.back() * p_);
  Real tmp(p_.precision());
  for (std::size_t k = weights_.size() - 2; k > 0; --k) {
    mpfr_mul(weights_[k].get(), weights_[k].get(), q_.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), weights_[k - 1].get(), p_.get(), MPFR_RNDN);
    mpfr_add(weights_[k].get(), weights_[k].get(), tmp.get(), MPFR_RNDN);
  }
  weights_[0] *= q_;
}

// ln w_k = ln n! - ln k! - ln (n-k)! + k ln p + (n-k) ln q, so no logarithm per atom.
Real BinomialLadder::entropy() const {
  const Precision prec = p_.precision();
  if (p_.is_zero() || q_.is_zero()) return Real(prec);
  const long n = trials();
  const mpfr_exp_t floor = -2 * static_cast<mpfr_exp_t>(prec.bits());
  Real h(prec);
  Real ln_w(prec);
  Real tmp(prec);
  for (long k = 0; k <= n; ++k) {
    const Real& w = weights_[static_cast<std::size_t>(k)];
    if (w.is_zero() || mpfr_get_exp(w.get()) < floor) continue;
    mpfr_sub(ln_w.get(), ln_factorial_[static_cast<std::size_t>(n)].get(), ln_factorial_[static_cast<std::size_t>(k)].get(),
             MPFR_RNDN);
    mpfr_sub(ln_w.get(), ln_w.get(), ln_factorial_[static_cast<std::size_t>(n - k)].get(), MPFR_RNDN);
    mpfr_mul_si(tmp.get(), ln_p_.get(), k, MPFR_RNDN);
    mpfr_add(ln_w.get(), ln_w.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul_si(tmp.get(), ln_q_.get(), n - k, MPFR_RNDN);
    mpfr_add(ln_w.get(), ln_w.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), ln_w.get(), w.get(), MPFR_RNDN);
    mpfr_sub(h.get(), h.get(), tmp.get(), MPFR_RNDN);
  }
  return h;
}

std::vector<Real> binomial_entropies(long n_max, const Real& p) {
  if (n_max < 0) throw DomainError("binomial_entropies needs n_max >= 0");
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  BinomialLadder ladder(p);
  out.push_back(ladder.entropy());
  for (long n = 1; n <= n_max; ++n) {
    ladder.step();
    out.push_back(ladder.entropy());
  }
  return out;
}

}  // namespace epi
