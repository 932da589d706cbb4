#include "epi/asymptotics.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "epi/errors.hpp"

namespace epi {

namespace {

constexpr int kRuleOrder = 20;
constexpr int kMaxDepth = 48;

struct Rule {
  std::vector<Real> nodes;  // on [-1, 1]
  std::vector<Real> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_m at the working precision.
Rule make_rule(Precision prec) {
  Rule rule;
  const Real eps = tolerance(prec) * tolerance(prec);
  for (int i = 1; i <= kRuleOrder; ++i) {
    Real x = Real::from_double(std::cos(M_PI * (i - 0.25) / (kRuleOrder + 0.5)), prec);
    Real derivative(prec);
    for (int iter = 0; iter < 100; ++iter) {
      Real p0(1L, prec);
      Real p1 = x;
      for (int k = 2; k <= kRuleOrder; ++k) {
        Real p2 = ((2L * k - 1L) * x * p1 - (k - 1L) * p0) / static_cast<long>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      derivative = static_cast<long>(kRuleOrder) * (x * p1 - p0) / (x * x - 1L);
      const Real dx = p1 / derivative;
      x -= dx;
      if (abs(dx) <= eps) break;
    }
    rule.weights.push_back(2L / ((1L - x * x) * derivative * derivative));
    rule.nodes.push_back(std::move(x));
  }
  return rule;
}

const Rule& rule_for(Precision prec) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  const std::lock_guard lock(mutex);
  auto it = cache.find(prec.digits);
  if (it == cache.end()) it = cache.emplace(prec.digits, make_rule(prec)).first;
  return it->second;
}

class MixtureIntegrand {
 public:
  MixtureIntegrand(const IntegerPmf& pmf, const Real& sigma, const Real& reach)
      : pmf_(pmf),
        sigma_(sigma),
        reach_(reach * sigma),
        inv_two_var_(1L / (2L * sigma * sigma)),
        norm_(1L / (sigma * sqrt(2L * Real::pi(sigma.precision())))) {}

  // -f ln f at x
  Real operator()(const Real& x) const {
    const Precision prec = sigma_.precision();
    const long lo = std::max(pmf_.offset(), ceil_to_long(x - reach_) - 1);
    const long hi = std::min(pmf_.last(), ceil_to_long(x + reach_));
    Real f(prec);
    for (long k = lo; k <= hi; ++k) {
      const Real& w = pmf_.weights()[static_cast<std::size_t>(k - pmf_.offset())];
      if (w.is_zero()) continue;
      const Real d = x - k;
      f += w * exp(-(d * d) * inv_two_var_);
    }
    f *= norm_;
    return -xlogx(f);
  }

 private:
  const IntegerPmf& pmf_;
  Real sigma_;
  Real reach_;
  Real inv_two_var_;
  Real norm_;
};

class Integrator {
 public:
  Integrator(const MixtureIntegrand& f, const Rule& rule, Real tol, Real total_width)
      : f_(f), rule_(rule), tol_(std::move(tol)), total_width_(std::move(total_width)) {}

  Real apply(const Real& a, const Real& b) const {
    const Real half = (b - a) / 2L;
    const Real mid = (a + b) / 2L;
    Real sum(a.precision());
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) sum += rule_.weights[i] * f_(mid + half * rule_.nodes[i]);
    return sum * half;
  }

  void integrate(const Real& a, const Real& b) { refine(a, b, apply(a, b), 0); }

  [[nodiscard]] const Real& value() const { return value_; }
  [[nodiscard]] const Real& error() const { return error_; }

 private:
  void refine(const Real& a, const Real& b, const Real& whole, int depth) {
    const Real mid = (a + b) / 2L;
    const Real left = apply(a, mid);
    const Real right = apply(mid, b);
    const Real both = left + right;
    const Real err = abs(whole - both);
    if (err <= tol_ * (b - a) / total_width_) {
      value_ += both;
      error_ += err;
      return;
    }
    if (depth >= kMaxDepth) {
      throw TruncationError("smoothed entropy: quadrature tolerance " + tol_.str(6) +
                            " not reachable at this precision near x = " + mid.str(12));
    }
    refine(a, mid, left, depth + 1);
    refine(mid, b, right, depth + 1);
  }

  const MixtureIntegrand& f_;
  const Rule& rule_;
  Real tol_;
  Real total_width_;
  Real value_{tol_.precision()};
  Real error_{tol_.precision()};
};

}  // namespace

Real knessl_g(const IntegerPmf& base, long n, long budget) {
  if (base.size() < 2) throw DomainError("knessl_g needs a base with at least two support points");
  if (n < 1) throw DomainError("knessl_g needs n >= 1");
  const long support = n * static_cast<long>(base.size() - 1) + 1;
  if (support > budget) {
    throw BudgetExceeded("knessl_g: X^(" + std::to_string(n) + ") has " + std::to_string(support) +
                         " atoms, budget is " + std::to_string(budget));
  }
  const Precision prec = base.precision();
  const Real var = base.variance();
  const Real h = entropy(iid_sum_pmf(base, n));
  return h - log(2L * Real::pi(prec) * exp(Real(1L, prec)) * n * var) / 2L;
}

KnesslProfile knessl_profile(const IntegerPmf& base, const std::vector<long>& ns, std::string label, long budget) {
  KnesslProfile profile{std::move(label), base.variance(), cumulants_of(base, 4), {}, std::nullopt};
  for (long n : ns) profile.g_values.emplace(n, knessl_g(base, n, budget));
  for (auto it = profile.g_values.rbegin(); it != profile.g_values.rend(); ++it) {
    if (!(it->second < 0L)) break;
    profile.onset = it->first;
  }
  return profile;
}

LeadingTerm predicted_leading_term(const IntegerPmf& base, int max_order) {
  if (base.size() < 2) throw DomainError("predicted_leading_term needs a non-degenerate base");
  const Precision prec = base.precision();
  const CumulantSet kappa = cumulants_of(base, max_order);
  const Real eps = tolerance(prec);
  const Real& var = kappa(2);
  for (int j = 3; j <= max_order; ++j) {
    if (abs(kappa(j)) <= eps) continue;
    Real c = kappa(j) * kappa(j) / (2L * to_real(Rational(factorial(static_cast<unsigned long>(j))), prec) * pow(var, j));
    return {std::move(c), j - 2, j};
  }
  throw DomainError("all cumulants of order 3.." + std::to_string(max_order) + " vanish");
}

LeadingFit fit_power_law(const std::vector<long>& ns, const std::vector<Real>& g) {
  if (ns.size() != g.size()) throw DomainError("fit_power_law: size mismatch");
  if (ns.size() < 4) throw DomainError("fit_power_law needs at least 4 points");
  std::vector<double> x;
  std::vector<double> y;
  LeadingFit fit;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (g[i].is_zero()) throw DomainError("fit_power_law: g(n) = 0 at n = " + std::to_string(ns[i]));
    x.push_back(std::log(static_cast<double>(ns[i])));
    y.push_back(log(abs(g[i])).to_double());
    if (i > 0 && (ns[i] <= ns[i - 1] || !(abs(g[i]) < abs(g[i - 1])))) fit.monotone = false;
  }
  const double count = static_cast<double>(x.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  fit.exponent = -slope;
  fit.constant = std::exp(my - slope * mx);
  return fit;
}

LeadingFit leading_constant_fit(const IntegerPmf& base, const std::vector<long>& ns, long budget) {
  std::vector<Real> g;
  for (long n : ns) g.push_back(knessl_g(base, n, budget));
  return fit_power_law(ns, g);
}

SmoothedEntropy gaussian_smoothed_entropy(const IntegerPmf& base_sum, const Real& sigma, const Real& tol) {
  if (!(sigma > 0L)) throw DomainError("gaussian_smoothed_entropy needs sigma > 0");
  if (!(tol > 0L)) throw DomainError("gaussian_smoothed_entropy needs tol > 0");
  const Precision prec = base_sum.precision();
  const Real s = sigma.at(prec);

  // Beyond `reach` standard deviations a Gaussian is below the working precision.
  const Real reach = sqrt(2L * (log(Real(10L, prec)) * prec.digits + 10L));
  const MixtureIntegrand integrand(base_sum, s, 2L * reach);

  struct Window {
    Real lo;
    Real hi;
    std::vector<long> atoms;
  };
  std::vector<Window> windows;
  for (long k = base_sum.offset(); k <= base_sum.last(); ++k) {
    if (base_sum.at(k).is_zero()) continue;
    Real lo = Real(k, prec) - reach * s;
    Real hi = Real(k, prec) + reach * s;
    if (!windows.empty() && lo <= windows.back().hi) {
      windows.back().hi = std::move(hi);
      windows.back().atoms.push_back(k);
    } else {
      windows.push_back({std::move(lo), std::move(hi), {k}});
    }
  }

  std::vector<std::pair<Real, Real>> pieces;
  Real total_width(prec);
  for (const auto& w : windows) {
    std::vector<Real> cuts{w.lo};
    if (s < Real::ratio(1, 2, prec)) {
      for (std::size_t i = 0; i < w.atoms.size(); ++i) {
        if (i > 0) cuts.push_back(Real::ratio(2 * w.atoms[i - 1] + 1, 2, prec));
        cuts.emplace_back(w.atoms[i], prec);
      }
    } else {
      const long parts = std::max(2L, ceil_to_long((w.hi - w.lo) / s));
      for (long i = 1; i < parts; ++i) cuts.push_back(w.lo + (w.hi - w.lo) * i / parts);
    }
    cuts.push_back(w.hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] <= cuts[i]) continue;
      total_width += cuts[i + 1] - cuts[i];
      pieces.emplace_back(cuts[i], cuts[i + 1]);
    }
  }

  Integrator integrator(integrand, rule_for(prec), tol.at(prec), total_width);
  for (const auto& [a, b] : pieces) integrator.integrate(a, b);
  return {0, s, integrator.value(), integrator.error()};
}

std::vector<TulinoRow> tulino_verdu_compare(const Real& p, const Real& sigma, long n_min, long n_max,
                                            const Real& tol) {
  if (n_min < 2 || n_max < n_min) throw DomainError("tulino_verdu_compare needs 2 <= n_min <= n_max");
  if (!(p > 0L) || !(p < 1L)) throw DomainError("tulino_verdu_compare needs 0 < p < 1");
  const Precision prec = p.precision();
  auto smoothed = [&](long n) {
    SmoothedEntropy e = gaussian_smoothed_entropy(binomial_pmf(n, p), sigma * sqrt(Real(n, prec)), tol);
    e.n = n;
    return e;
  };
  std::vector<TulinoRow> rows;
  SmoothedEntropy previous = smoothed(n_min - 1);
  for (long n = n_min; n <= n_max; ++n) {
    SmoothedEntropy current = smoothed(n);
    TulinoRow row;
    row.n = n;
    row.increment = current.h_value - previous.h_value;
    row.full_log = log(Real::ratio(n, n - 1, prec));
    row.half_log = row.full_log / 2L;
    row.quadrature_error = current.quadrature_error + previous.quadrature_error;
    row.half_holds = row.increment + row.quadrature_error >= row.half_log;
    row.full_holds = row.increment + row.quadrature_error >= row.full_log;
    rows.push_back(std::move(row));
    previous = std::move(current);
  }
  return rows;
}

}  // namespace epi
