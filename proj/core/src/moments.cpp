#include "epi/moments.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "epi/detail/closed_moments.hpp"
#include "epi/errors.hpp"

namespace epi {

namespace {

void require_open_unit(const Real& p, const char* what) {
  if (!(p > 0L) || !(p < 1L)) throw DomainError(std::string(what) + " needs 0 < p < 1, got " + p.str(20));
}

long binomial_coefficient(long n, long k) {
  long c = 1;
  for (long i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// kappa_m = mu'_m - sum_{i=1}^{m-1} C(m-1, i-1) kappa_i mu'_{m-i}
template <class S>
std::vector<S> kappa_from_raw(const std::vector<S>& raw) {
  std::vector<S> kappa;
  kappa.reserve(raw.size());
  for (std::size_t m = 1; m <= raw.size(); ++m) {
    S value = raw[m - 1];
    for (std::size_t i = 1; i < m; ++i) {
      const long c = binomial_coefficient(static_cast<long>(m) - 1, static_cast<long>(i) - 1);
      S term = kappa[i - 1] * raw[m - i - 1];
      term *= c;
      value -= term;
    }
    kappa.push_back(value);
  }
  return kappa;
}

Real f_coeff(int k, const Real& x) {
  if (k == 1) return log(x / (1L - x));
  Real term = pow(1L - x, -(k - 1));
  const Real other = pow(x, -(k - 1));
  if (k % 2 == 0) {
    term += other;
  } else {
    term -= other;
  }
  return term / (static_cast<long>(k) * (k - 1));
}

Rational rational_pow(const Rational& x, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

}  // namespace

CumulantSet::CumulantSet(std::vector<Real> kappa) : kappa_(std::move(kappa)) {
  if (kappa_.empty()) throw DomainError("empty cumulant set");
}

const Real& CumulantSet::operator()(int g) const {
  if (g < 1 || g > order()) throw DomainError("cumulant index out of range: " + std::to_string(g));
  return kappa_[static_cast<std::size_t>(g - 1)];
}

int PartitionTerm::total() const {
  int s = 0;
  for (std::size_t a = 0; a < parts.size(); ++a) s += parts[a] * multiplicities[a];
  return s;
}

int PartitionTerm::count() const {
  int s = 0;
  for (int i : multiplicities) s += i;
  return s;
}

int PartitionTerm::excess() const { return total() - count(); }

Integer PartitionTerm::weight() const {
  Integer denom = 1;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    const Integer gf = factorial(static_cast<unsigned long>(parts[a]));
    Integer gp;
    mpz_pow_ui(gp.get_mpz_t(), gf.get_mpz_t(), static_cast<unsigned long>(multiplicities[a]));
    denom *= factorial(static_cast<unsigned long>(multiplicities[a])) * gp;
  }
  return factorial(static_cast<unsigned long>(total())) / denom;
}

std::vector<PartitionTerm> partitions(int k, int min_part) {
  if (k < 1 || min_part < 1) throw DomainError("partitions needs k >= 1 and min_part >= 1");
  std::vector<PartitionTerm> out;
  PartitionTerm current;
  std::function<void(int, int)> recurse = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int g = std::min(remaining, max_part); g >= min_part; --g) {
      for (int i = remaining / g; i >= 1; --i) {
        current.parts.push_back(g);
        current.multiplicities.push_back(i);
        recurse(remaining - i * g, g - 1);
        current.parts.pop_back();
        current.multiplicities.pop_back();
      }
    }
  };
  recurse(k, k);
  return out;
}

MomentPolynomial::MomentPolynomial(int k, std::map<int, Real> coeffs) : k_(k), coeffs_(std::move(coeffs)) {}

int MomentPolynomial::degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

Real MomentPolynomial::operator()(long j) const {
  if (coeffs_.empty()) return Real();
  const Precision prec = coeffs_.begin()->second.precision();
  Real value(prec);
  for (const auto& [w, c] : coeffs_) value += c * pow(Real(j, prec), w);
  return value;
}

CumulantSet cumulants_from_raw(const std::vector<Real>& raw) {
  if (raw.empty()) throw DomainError("cumulants_from_raw needs at least one raw moment");
  return CumulantSet(kappa_from_raw(raw));
}

CumulantSet cumulants_of(const IntegerPmf& base, int K) {
  if (K < 1) throw DomainError("cumulants_of needs K >= 1");
  std::vector<Real> raw;
  for (int m = 1; m <= K; ++m) {
    Real moment(base.precision());
    long k = base.offset();
    for (const auto& w : base.weights()) moment += w * pow(Real(k++, base.precision()), m);
    raw.push_back(moment);
  }
  return cumulants_from_raw(raw);
}

CumulantSet bernoulli_cumulants(const Real& p, int K) {
  require_open_unit(p, "bernoulli_cumulants");
  if (K < 2) throw DomainError("bernoulli_cumulants needs K >= 2");
  return cumulants_from_raw(std::vector<Real>(static_cast<std::size_t>(K), p));
}

Real central_moment_closed(long n, const Real& p, int k) {
  if (n < 0) throw DomainError("central_moment_closed needs n >= 0");
  if (k < 2 || k > 7) throw DomainError("central_moment_closed needs k in 2..7");
  const Precision prec = p.precision();
  const Real r = p - Real::ratio(1, 2, prec);
  return detail::closed_central_moment(k, Real(n, prec), r, Real(1L, prec),
                                       [](const Real& x, long num, long den) { return x * num / den; });
}

Real central_moment_brute(const IntegerPmf& pmf, int k, const Real& mean) {
  if (k < 0) throw DomainError("central_moment_brute needs k >= 0");
  const Precision prec = pmf.precision();
  Real mu(prec);
  long i = pmf.offset();
  for (const auto& w : pmf.weights()) {
    if (!w.is_zero()) mu += w * pow(Real(i, prec) - mean, k);
    ++i;
  }
  return mu;
}

MomentPolynomial faa_di_bruno_poly(int k, const CumulantSet& cumulants) {
  if (k < 2) throw DomainError("faa_di_bruno_poly needs k >= 2");
  if (cumulants.order() < k) throw DomainError("faa_di_bruno_poly needs cumulants up to order k");
  const Precision prec = cumulants(1).precision();
  std::map<int, Real> coeffs;
  for (const auto& term : partitions(k, 2)) {
    Real product = to_real(Rational(term.weight()), prec);
    for (std::size_t a = 0; a < term.parts.size(); ++a) product *= pow(cumulants(term.parts[a]), term.multiplicities[a]);
    auto [it, inserted] = coeffs.try_emplace(term.count(), prec);
    it->second += product;
  }
  return {k, std::move(coeffs)};
}

Real taylor_coeff(int k, const Real& x) {
  if (k < 1) throw DomainError("taylor_coeff needs k >= 1");
  require_open_unit(x, "taylor_coeff");
  return f_coeff(k, x);
}

Rational taylor_coeff_exact(int k, const Rational& x) {
  if (k < 2) throw DomainError("taylor_coeff_exact needs k >= 2 (F^(1) is not rational)");
  if (x <= 0 || x >= 1) throw DomainError("taylor_coeff_exact needs 0 < x < 1");
  const Rational a = 1 / rational_pow(Rational(1 - x), k - 1);
  const Rational b = 1 / rational_pow(x, k - 1);
  Rational out = k % 2 == 0 ? Rational(a + b) : Rational(a - b);
  out /= static_cast<long>(k) * (k - 1);
  return out;
}

Real taylor_lower_bound(const Real& x, const Real& p, int l) {
  if (l < 0) throw DomainError("taylor_lower_bound needs l >= 0");
  require_open_unit(x, "taylor_lower_bound");
  require_open_unit(p, "taylor_lower_bound");
  const Real d = x - p;
  Real sum(p.precision());
  Real power(1L, p.precision());
  for (int k = 1; k <= 2 * l + 1; ++k) {
    power *= d;
    sum += f_coeff(k, p) * power;
  }
  return sum;
}

Real gamma_l(long j, const Real& p, int l) {
  if (j < 1) throw DomainError("gamma_l needs j >= 1");
  if (l < 0) throw DomainError("gamma_l needs l >= 0");
  require_open_unit(p, "gamma_l");
  const Precision prec = p.precision();
  const int top = 2 * l + 1;
  std::optional<IntegerPmf> pmf;
  if (top > 7) pmf = binomial_pmf(j, p);
  Real sum(prec);
  for (int k = 2; k <= top; ++k) {
    const Real mu = k <= 7 ? central_moment_closed(j, p, k) : central_moment_brute(*pmf, k, p * j);
    sum += f_coeff(k, p) * mu / pow(Real(j, prec), k);
  }
  return sum;
}

std::vector<Real> cumulative_gamma_profile(long n, const Real& p, int l) {
  if (n < 0) throw DomainError("cumulative_gamma_profile needs n >= 0");
  if (l < 0) throw DomainError("cumulative_gamma_profile needs l >= 0");
  require_open_unit(p, "cumulative_gamma_profile");
  const Precision prec = p.precision();
  const int top = 2 * l + 1;
  std::vector<Real> coeffs;
  for (int k = 2; k <= top; ++k) coeffs.push_back(f_coeff(k, p));

  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.emplace_back(prec);
  BinomialLadder ladder(p);
  for (long j = 1; j <= n; ++j) {
    ladder.step();
    const Real jr(j, prec);
    Real gamma(prec);
    for (int k = 2; k <= top; ++k) {
      Real mu(prec);
      if (k <= 7) {
        mu = central_moment_closed(j, p, k);
      } else {
        const IntegerPmf pmf(0, {ladder.weights().begin(), ladder.weights().end()});
        mu = central_moment_brute(pmf, k, p * j);
      }
      gamma += coeffs[static_cast<std::size_t>(k - 2)] * mu / pow(jr, k);
    }
    out.push_back(out.back() + gamma);
  }
  return out;
}

Real cumulative_gamma_bound(long n, const Real& p, int l) {
  if (n < 1) throw DomainError("cumulative_gamma_bound needs n >= 1");
  return cumulative_gamma_profile(n, p, l).back();
}

Real c_coeff(int w, const Real& p) {
  if (w < 1) throw DomainError("c_coeff needs w >= 1");
  require_open_unit(p, "c_coeff");
  const auto kappa = bernoulli_cumulants(p, 2 * w);
  Real total(p.precision());
  for (int k = w + 1; k <= 2 * w; ++k) {
    const Real f = f_coeff(k, p);
    for (const auto& term : partitions(k, 2)) {
      if (term.excess() != w) continue;
      Real product = to_real(Rational(term.weight()), p.precision()) * f;
      for (std::size_t a = 0; a < term.parts.size(); ++a) product *= pow(kappa(term.parts[a]), term.multiplicities[a]);
      total += product;
    }
  }
  return total;
}

Rational c_coeff_exact(int w, const Rational& p) {
  if (w < 1) throw DomainError("c_coeff_exact needs w >= 1");
  if (p <= 0 || p >= 1) throw DomainError("c_coeff_exact needs 0 < p < 1");
  std::vector<Rational> raw(static_cast<std::size_t>(2 * w), p);
  std::vector<Rational> kappa;
  for (std::size_t m = 1; m <= raw.size(); ++m) {
    Rational value = raw[m - 1];
    for (std::size_t i = 1; i < m; ++i) {
      value -= binomial_coefficient(static_cast<long>(m) - 1, static_cast<long>(i) - 1) * kappa[i - 1] * raw[m - i - 1];
    }
    kappa.push_back(value);
  }
  Rational total = 0;
  for (int k = w + 1; k <= 2 * w; ++k) {
    const Rational f = taylor_coeff_exact(k, p);
    for (const auto& term : partitions(k, 2)) {
      if (term.excess() != w) continue;
      Rational product = Rational(term.weight()) * f;
      for (std::size_t a = 0; a < term.parts.size(); ++a) {
        product *= rational_pow(kappa[static_cast<std::size_t>(term.parts[a] - 1)], term.multiplicities[a]);
      }
      total += product;
    }
  }
  return total;
}

Real harmonic_lower_bound(long n, const Real& p, int W) {
  if (n < 1) throw DomainError("harmonic_lower_bound needs n >= 1");
  if (W < 2 || W % 2 != 0) throw DomainError("harmonic_lower_bound needs an even W >= 2");
  const Precision prec = p.precision();
  Real bound(prec);
  for (int w = 1; w <= W; ++w) {
    Real harmonic(prec);
    for (long j = n; j >= 1; --j) harmonic += pow(Real(j, prec), -w);
    bound += c_coeff(w, p) * harmonic;
  }
  return bound;
}

}  // namespace epi
