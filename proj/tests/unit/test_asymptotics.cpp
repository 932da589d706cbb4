#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "epi/asymptotics.hpp"
#include "epi/errors.hpp"
#include "epi/pmf.hpp"
#include "support.hpp"

namespace epi {
namespace {

using test::Near;
using test::P50;
using test::R;

IntegerPmf uniform3() {
  return IntegerPmf(0, {Real::ratio(1, 3, P50), Real::ratio(1, 3, P50), Real::ratio(1, 3, P50)});
}

Real half_log_gauss(const Real& var) {
  return log(2L * Real::pi(P50) * exp(Real(1L, P50)) * var) / 2L;
}

TEST(Knessl, GapIsExactEntropyMinusGaussian) {
  const Real p = R("0.3");
  const IntegerPmf b = binomial_pmf(1, p);
  for (long n : {1L, 2L, 9L, 40L}) {
    const Real expected = entropy(binomial_pmf(n, p)) - half_log_gauss(p * (1L - p) * n);
    EXPECT_TRUE(Near(knessl_g(b, n), expected, R("1e-40"))) << n;
  }
}

TEST(Knessl, NegativeForFairCoin) {
  const IntegerPmf b = binomial_pmf(1, R("0.5"));
  std::vector<long> ns;
  for (long n = 1; n <= 200; n += 7) ns.push_back(n);
  const auto profile = knessl_profile(b, ns, "B(1,1/2)");
  EXPECT_EQ(profile.base, "B(1,1/2)");
  EXPECT_TRUE(Near(profile.sigma2, "0.25", "1e-48"));
  EXPECT_TRUE(Near(profile.kappa(4), "-0.125", "1e-45"));
  for (const auto& [n, g] : profile.g_values) EXPECT_LT(g, Real(P50)) << n;
  ASSERT_TRUE(profile.onset.has_value());
  EXPECT_EQ(*profile.onset, 1);
}

TEST(Knessl, PredictedLeadingTerms) {
  const auto half = predicted_leading_term(binomial_pmf(1, R("0.5")));
  EXPECT_EQ(half.cumulant_order, 4);
  EXPECT_EQ(half.exponent, 2);
  EXPECT_TRUE(Near(half.constant, Real::ratio(1, 12, P50), R("1e-45")));

  // kappa_3 = pq(q - p), sigma^2 = pq
  const auto skew = predicted_leading_term(binomial_pmf(1, R("0.3")));
  EXPECT_EQ(skew.cumulant_order, 3);
  EXPECT_EQ(skew.exponent, 1);
  const Real pq = R("0.21");
  const Real k3 = pq * R("0.4");
  EXPECT_TRUE(Near(skew.constant, k3 * k3 / (12L * pq * pq * pq), R("1e-45")));
  EXPECT_TRUE(Near(skew.constant, "0.0634920634920634920634920634920634920634920634920", "1e-45"));

  EXPECT_EQ(predicted_leading_term(uniform3()).exponent, 2);
  EXPECT_THROW(predicted_leading_term(IntegerPmf::point_mass(0, P50)), DomainError);
}

TEST(Knessl, ScaledGapApproachesLeadingConstant) {
  const auto half = binomial_pmf(1, R("0.5"));
  const double c_half = 1.0 / 12.0;
  const double scaled = (knessl_g(half, 1024) * 1024L * 1024L).to_double();
  EXPECT_NEAR(scaled, -c_half, 0.05 * c_half);

  const auto skew = binomial_pmf(1, R("0.3"));
  const double c_skew = predicted_leading_term(skew).constant.to_double();
  EXPECT_NEAR((knessl_g(skew, 1024) * 1024L).to_double(), -c_skew, 0.05 * c_skew);
}

TEST(Knessl, FittedExponents) {
  const std::vector<long> ns = {128, 256, 512, 1024};
  const auto half = leading_constant_fit(binomial_pmf(1, R("0.5")), ns);
  EXPECT_TRUE(half.monotone);
  EXPECT_NEAR(half.exponent, 2.0, 0.2);
  EXPECT_NEAR(half.constant, 1.0 / 12.0, 0.05 / 12.0 * 2);

  const auto skew = leading_constant_fit(binomial_pmf(1, R("0.3")), ns);
  EXPECT_TRUE(skew.monotone);
  EXPECT_NEAR(skew.exponent, 1.0, 0.1);

  const auto flat = leading_constant_fit(uniform3(), ns);
  EXPECT_NEAR(flat.exponent, 2.0, 0.2);

  EXPECT_THROW(leading_constant_fit(binomial_pmf(1, R("0.5")), {8, 16, 32}), DomainError);
}

TEST(Knessl, PowerLawFitOnSyntheticData) {
  std::vector<long> ns;
  std::vector<Real> g;
  for (long n = 10; n <= 10000; n *= 10) {
    ns.push_back(n);
    g.push_back(-R("0.7") / pow(Real(n, P50), 3));
  }
  const auto fit = fit_power_law(ns, g);
  EXPECT_NEAR(fit.exponent, 3.0, 1e-9);
  EXPECT_NEAR(fit.constant, 0.7, 1e-9);
  EXPECT_TRUE(fit.monotone);
  g[2] = g[1] * 2L;
  EXPECT_FALSE(fit_power_law(ns, g).monotone);
}

TEST(Knessl, BudgetIsEnforced) {
  EXPECT_THROW(knessl_g(binomial_pmf(1, R("0.5")), 100, 50), BudgetExceeded);
  EXPECT_THROW(knessl_g(IntegerPmf::point_mass(0, P50), 4), DomainError);
}

TEST(Smoothed, PureGaussian) {
  const Real sigma = R("0.3");
  const auto s = gaussian_smoothed_entropy(IntegerPmf::point_mass(0, P50), sigma, R("1e-25"));
  EXPECT_TRUE(Near(s.h_value, half_log_gauss(sigma * sigma), R("1e-24")));
  EXPECT_LE(s.quadrature_error, R("1e-25"));
}

TEST(Smoothed, SmallNoiseRecoversDiscreteEntropy) {
  const Real sigma = R("1e-3");
  const auto s = gaussian_smoothed_entropy(binomial_pmf(1, R("0.5")), sigma, R("1e-20"));
  EXPECT_TRUE(Near(s.h_value - half_log_gauss(sigma * sigma), Real::ln2(P50), R("1e-6")));
  EXPECT_LE(s.quadrature_error, R("1e-20"));
}

TEST(Smoothed, LargeNoiseIsNearlyGaussian) {
  const Real sigma = R("10");
  const auto s = gaussian_smoothed_entropy(binomial_pmf(1, R("0.5")), sigma, R("1e-20"));
  const Real gauss = half_log_gauss(sigma * sigma + R("0.25"));
  EXPECT_LE(abs(s.h_value - gauss), abs(gauss) / 100L);
  // the Gaussian with matched variance maximizes entropy
  EXPECT_LE(s.h_value, gauss);
  EXPECT_GE(s.h_value, half_log_gauss(sigma * sigma));
}

TEST(Smoothed, MutualInformationConvergesToDiscreteEntropy) {
  const IntegerPmf b = binomial_pmf(3, R("0.4"));
  const Real h = entropy(b);
  Real last_gap(1000L, P50);
  for (const char* st : {"1e-1", "1e-2", "1e-3"}) {
    const Real sigma = R(st);
    const auto s = gaussian_smoothed_entropy(b, sigma, R("1e-20"));
    const Real info = s.h_value - half_log_gauss(sigma * sigma);
    EXPECT_LE(info, h + R("1e-20")) << st;
    const Real gap = abs(info - h);
    EXPECT_LE(gap, last_gap + R("1e-20")) << st;
    last_gap = gap;
  }
  EXPECT_LT(last_gap, R("1e-12"));
}

TEST(Smoothed, RejectsBadArguments) {
  const IntegerPmf b = binomial_pmf(1, R("0.5"));
  EXPECT_THROW(gaussian_smoothed_entropy(b, Real(P50), R("1e-10")), DomainError);
  EXPECT_THROW(gaussian_smoothed_entropy(b, R("0.1"), Real(P50)), DomainError);
  EXPECT_THROW(gaussian_smoothed_entropy(b, R("0.1"), R("1e-200")), TruncationError);
}

TEST(Tulino, SmallRangeAtHalf) {
  const auto rows = tulino_verdu_compare(R("0.5"), R("1e-3"), 2, 9, R("1e-15"));
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows.front().n, 2);
  EXPECT_TRUE(rows.front().half_holds);
  EXPECT_TRUE(Near(rows.front().half_log, Real::ln2(P50) / 2L, R("1e-45")));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    EXPECT_GT(r.increment, Real(P50));
    EXPECT_TRUE(r.half_holds) << r.n;
    EXPECT_TRUE(Near(r.full_log, 2L * r.half_log, R("1e-45")));
    if (i > 0) EXPECT_LT(r.increment, rows[i - 1].increment);
    // with sigma this small the increment is the discrete one
    const auto h = binomial_entropies(r.n, R("0.5"));
    const Real discrete = h[static_cast<std::size_t>(r.n)] - h[static_cast<std::size_t>(r.n - 1)] +
                          log(Real(r.n, P50) / Real(r.n - 1, P50)) / 2L;
    EXPECT_TRUE(Near(r.increment, discrete, R("1e-8"))) << r.n;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n >= 7) EXPECT_TRUE(rows[i].full_holds) << rows[i].n;
  }
  EXPECT_THROW(tulino_verdu_compare(R("0.5"), R("1e-3"), 1, 3, R("1e-10")), DomainError);
}

}  // namespace
}  // namespace epi
