#include <gtest/gtest.h>

#include "epi/errors.hpp"
#include "epi/moments.hpp"
#include "epi/pmf.hpp"
#include "support.hpp"

namespace epi {
namespace {

using test::Near;
using test::P50;
using test::R;

const char* kGrid[] = {"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"};

TEST(Cumulants, BernoulliExamples) {
  const auto half = bernoulli_cumulants(R("0.5"), 4);
  EXPECT_EQ(half(1), R("0.5"));
  EXPECT_TRUE(Near(half(2), "0.25", "1e-48"));
  EXPECT_TRUE(Near(half(3), "0", "1e-48"));
  EXPECT_TRUE(Near(half(4), "-0.125", "1e-48"));
  const auto k3 = bernoulli_cumulants(R("0.3"), 3);
  EXPECT_TRUE(Near(k3(3), "0.084", "1e-48"));
  EXPECT_THROW(bernoulli_cumulants(R("0.3"), 1), DomainError);
  EXPECT_THROW(bernoulli_cumulants(Real(P50), 3), DomainError);
  EXPECT_THROW(static_cast<void>(k3(4)), DomainError);
}

TEST(Cumulants, OfAnyPmfMatchBernoulliAndAddUnderConvolution) {
  const Real p = R("0.35");
  const auto a = cumulants_of(binomial_pmf(1, p), 6);
  const auto b = bernoulli_cumulants(p, 6);
  for (int g = 1; g <= 6; ++g) EXPECT_TRUE(Near(a(g), b(g), R("1e-45")));
  const auto c = cumulants_of(binomial_pmf(5, p), 6);
  for (int g = 1; g <= 6; ++g) EXPECT_TRUE(Near(c(g), 5L * b(g), R("1e-42"))) << g;
}

TEST(Partitions, CountsAndWeights) {
  const long counts[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  const long bell[] = {1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int k = 1; k <= 10; ++k) {
    const auto all = partitions(k);
    EXPECT_EQ(static_cast<long>(all.size()), counts[k - 1]);
    Integer total = 0;
    for (const auto& t : all) {
      EXPECT_EQ(t.total(), k);
      for (std::size_t a = 1; a < t.parts.size(); ++a) EXPECT_GT(t.parts[a - 1], t.parts[a]);
      total += t.weight();
    }
    // set partitions of {1..k}
    EXPECT_EQ(total, Integer(bell[k - 1]));
  }
  // 4 = 2+2 carries weight 4!/(2! (2!)^2) = 3
  const auto four = partitions(4, 2);
  ASSERT_EQ(four.size(), 2u);
  EXPECT_EQ(four[0].parts, std::vector<int>{4});
  EXPECT_EQ(four[1].parts, std::vector<int>{2});
  EXPECT_EQ(four[1].multiplicities, std::vector<int>{2});
  EXPECT_EQ(four[1].weight(), Integer(3));
  EXPECT_EQ(four[1].excess(), 2);
}

TEST(CentralMoments, ClosedFormExamples) {
  for (long n : {0L, 1L, 7L, 30L}) {
    EXPECT_TRUE(Near(central_moment_closed(n, R("0.5"), 2), Real::ratio(n, 4, P50), R("1e-48")));
    EXPECT_TRUE(Near(central_moment_closed(n, R("0.5"), 3), "0", "1e-48"));
  }
  EXPECT_TRUE(Near(central_moment_closed(4, R("0.5"), 4), "2.5", "1e-48"));
  EXPECT_THROW(central_moment_closed(4, R("0.5"), 8), DomainError);
  EXPECT_THROW(central_moment_closed(4, R("0.5"), 1), DomainError);
}

TEST(CentralMoments, BruteExamples) {
  const Real p = R("0.3");
  EXPECT_TRUE(Near(central_moment_brute(binomial_pmf(1, p), 2, p), p * (1L - p), R("1e-48")));
  EXPECT_EQ(central_moment_brute(IntegerPmf::point_mass(5, P50), 3, Real(5L, P50)), Real(P50));
  EXPECT_TRUE(Near(central_moment_brute(binomial_pmf(4, R("0.5")), 4, Real(2L, P50)), "2.5", "1e-48"));
}

TEST(CentralMoments, ClosedFormsMatchBruteForce) {
  for (const char* ptext : kGrid) {
    const Real p = R(ptext);
    for (long n : {1L, 2L, 3L, 10L, 57L, 200L}) {
      const IntegerPmf b = binomial_pmf(n, p);
      for (int k = 2; k <= 7; ++k) {
        EXPECT_TRUE(Near(central_moment_closed(n, p, k), central_moment_brute(b, k, p * n), R("1e-35")))
            << ptext << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(FaaDiBruno, SmallOrderShapes) {
  const auto kappa = bernoulli_cumulants(R("0.3"), 4);
  const auto m2 = faa_di_bruno_poly(2, kappa);
  ASSERT_EQ(m2.coeffs().size(), 1u);
  EXPECT_TRUE(Near(m2.coeffs().at(1), kappa(2), R("1e-48")));
  const auto m3 = faa_di_bruno_poly(3, kappa);
  ASSERT_EQ(m3.coeffs().size(), 1u);
  EXPECT_TRUE(Near(m3.coeffs().at(1), kappa(3), R("1e-48")));
  const auto m4 = faa_di_bruno_poly(4, kappa);
  EXPECT_TRUE(Near(m4.coeffs().at(2), 3L * kappa(2) * kappa(2), R("1e-48")));
  EXPECT_TRUE(Near(m4.coeffs().at(1), kappa(4), R("1e-48")));
  EXPECT_EQ(m4.degree(), 2);
  EXPECT_THROW(faa_di_bruno_poly(5, kappa), DomainError);
}

TEST(FaaDiBruno, MatchesBruteForceUpToOrderEight) {
  for (const char* ptext : {"0.15", "0.5", "0.8"}) {
    const Real p = R(ptext);
    const auto kappa = bernoulli_cumulants(p, 8);
    for (int k = 2; k <= 8; ++k) {
      const auto poly = faa_di_bruno_poly(k, kappa);
      EXPECT_LE(poly.degree(), k / 2);
      for (long j : {1L, 2L, 5L, 16L, 64L}) {
        EXPECT_TRUE(Near(poly(j), central_moment_brute(binomial_pmf(j, p), k, p * j), R("1e-35")))
            << ptext << " k=" << k << " j=" << j;
      }
    }
  }
}

TEST(Taylor, CoefficientExamples) {
  EXPECT_TRUE(Near(taylor_coeff(1, R("0.5")), "0", "1e-48"));
  EXPECT_TRUE(Near(taylor_coeff(2, R("0.5")), "2", "1e-48"));
  EXPECT_TRUE(Near(taylor_coeff(2, R("0.3")), 1L / (2L * R("0.21")), R("1e-48")));
  EXPECT_TRUE(Near(taylor_coeff(4, R("0.5")), Real::ratio(4, 3, P50), R("1e-48")));
  EXPECT_EQ(taylor_coeff_exact(4, make_rational(1, 2)), make_rational(4, 3));
  EXPECT_THROW(taylor_coeff(2, Real(P50)), DomainError);
  EXPECT_THROW(taylor_coeff_exact(1, make_rational(1, 2)), DomainError);
}

TEST(Taylor, CoefficientsAreScaledDerivatives) {
  // F^(k)(x) = Hhat^(k)(x)/k!, checked with central differences of F^(k-1).
  const Real x = R("0.37");
  const Real h = R("1e-12");
  for (int k = 2; k <= 8; ++k) {
    const Real numeric = (taylor_coeff(k - 1, x + h) - taylor_coeff(k - 1, x - h)) / (2L * h) / static_cast<long>(k);
    EXPECT_TRUE(Near(numeric, taylor_coeff(k, x), R("1e-15"))) << k;
    if (k % 2 == 0) {
      for (const char* pt : kGrid) EXPECT_GT(taylor_coeff(k, R(pt)), Real(P50));
    }
  }
}

TEST(Taylor, LowerBoundExamplesAndRigor) {
  const Real hhat = bernoulli_entropy(R("0.5")) - bernoulli_entropy(R("0.3"));
  EXPECT_TRUE(Near(hhat, "0.082283", "1e-6"));
  EXPECT_TRUE(Near(taylor_lower_bound(R("0.3"), R("0.5"), 0), "0", "1e-48"));
  EXPECT_TRUE(Near(taylor_lower_bound(R("0.3"), R("0.5"), 1), "0.08", "1e-48"));
  for (const char* pt : kGrid) {
    EXPECT_TRUE(Near(taylor_lower_bound(R(pt), R(pt), 3), "0", "1e-48"));
    for (int i = 1; i < 40; ++i) {
      const Real x = Real::ratio(i, 40, P50);
      const Real truth = bernoulli_entropy(R(pt)) - bernoulli_entropy(x);
      for (int l = 0; l <= 5; ++l) EXPECT_LE(taylor_lower_bound(x, R(pt), l), truth + tolerance(P50)) << pt << " " << i;
    }
  }
}

TEST(Gamma, Examples) {
  const Real half = R("0.5");
  EXPECT_TRUE(Near(gamma_l(1, half, 1), "0.5", "1e-48"));
  EXPECT_TRUE(Near(gamma_l(9, half, 0), "0", "1e-48"));
  EXPECT_TRUE(Near(gamma_l(4, half, 1), "0.125", "1e-48"));
  const auto h = binomial_entropies(4, half);
  EXPECT_TRUE(Near(h[4] - h[3], "0.1520494", "1e-7"));
  EXPECT_TRUE(Near(cumulative_gamma_bound(1, half, 1), "0.5", "1e-48"));
  EXPECT_TRUE(Near(cumulative_gamma_bound(2, half, 1), "0.75", "1e-48"));
  EXPECT_THROW(gamma_l(0, half, 1), DomainError);
}

TEST(Gamma, BruteForceBranchAgreesWithClosedForms) {
  // l = 4 needs k = 8, 9 from brute force; the k <= 7 part must match l = 3.
  const Real p = R("0.3");
  for (long j : {1L, 3L, 12L}) {
    const Real extra = gamma_l(j, p, 4) - gamma_l(j, p, 3);
    const IntegerPmf b = binomial_pmf(j, p);
    Real expected(P50);
    for (int k = 8; k <= 9; ++k) {
      expected += taylor_coeff(k, p) * central_moment_brute(b, k, p * j) / pow(Real(j, P50), k);
    }
    EXPECT_TRUE(Near(extra, expected, R("1e-40")));
  }
  const auto profile = cumulative_gamma_profile(12, p, 4);
  EXPECT_TRUE(Near(profile.back(), cumulative_gamma_bound(12, p, 4), R("1e-40")));
}

TEST(Gamma, IncrementBoundIsRigorous) {
  for (const char* ptext : {"0.05", "0.2", "0.5", "0.7", "0.95"}) {
    const Real p = R(ptext);
    const auto h = binomial_entropies(120, p);
    for (int l = 0; l <= 3; ++l) {
      const auto profile = cumulative_gamma_profile(120, p, l);
      for (long j = 1; j <= 120; ++j) {
        const auto i = static_cast<std::size_t>(j);
        EXPECT_LE(profile[i] - profile[i - 1], h[i] - h[i - 1] + tolerance(P50)) << ptext << " l=" << l << " j=" << j;
        EXPECT_LE(profile[i], h[i] + tolerance(P50));
      }
    }
  }
}

TEST(HarmonicBound, CoefficientsMatchClosedForms) {
  for (const Rational& p : {make_rational(1, 2), make_rational(1, 3), make_rational(9, 10), make_rational(7, 100)}) {
    EXPECT_EQ(c_coeff_exact(1, p), make_rational(1, 2));
    const Rational pq = p * (1 - p);
    EXPECT_EQ(c_coeff_exact(2, p), Rational((1 - pq) / (12 * pq)));
  }
  EXPECT_TRUE(Near(c_coeff(2, R("0.5")), "0.25", "1e-48"));
  EXPECT_TRUE(Near(c_coeff(3, R("0.3")), to_real(c_coeff_exact(3, make_rational(3, 10)), P50), R("1e-45")));
}

TEST(HarmonicBound, Examples) {
  EXPECT_TRUE(Near(harmonic_lower_bound(1, R("0.5"), 2), "0.75", "1e-48"));
  // 0.5 * 25/12 + 0.25 * 205/144
  const Real expected = to_real(make_rational(25, 24) + make_rational(205, 576), P50);
  EXPECT_TRUE(Near(harmonic_lower_bound(4, R("0.5"), 2), expected, R("1e-48")));
  EXPECT_TRUE(Near(expected, "1.3975694", "1e-7"));
  EXPECT_THROW(harmonic_lower_bound(4, R("0.5"), 3), DomainError);
}

TEST(HarmonicBound, ValidFromFourFailsBelow) {
  const Real half = R("0.5");
  const auto h = binomial_entropies(500, half);
  for (long n = 1; n <= 3; ++n) EXPECT_GT(harmonic_lower_bound(n, half, 2), h[static_cast<std::size_t>(n)]) << n;
  for (long n = 4; n <= 500; n += (n < 40 ? 1 : 23)) {
    EXPECT_LE(harmonic_lower_bound(n, half, 2), h[static_cast<std::size_t>(n)] + tolerance(P50)) << n;
  }
}

}  // namespace
}  // namespace epi
