#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "epi/errors.hpp"
#include "epi/moments.hpp"
#include "epi/pmf.hpp"
#include "epi/polycert.hpp"
#include "json.hpp"
#include "support.hpp"

namespace epi {
namespace {

using test::P50;
using test::R;

const BivarPoly& g_poly() {
  static const BivarPoly g = build_g();
  return g;
}

// The polynomial as printed, term by term: coefficient, deg_n, deg_t.
BivarPoly printed_g() {
  struct T {
    long c;
    int i;
    int j;
  };
  const T terms[] = {
      {35, 7, 1},
      {315, 6, 1}, {35, 6, 2}, {70, 6, 0},
      {-2989, 5, 1}, {-721, 5, 3}, {-3339, 5, 2}, {-315, 5, 0},
      {721, 4, 1}, {-546, 4, 4}, {-826, 4, 0}, {371, 4, 2}, {-1568, 4, 3},
      {-135, 3, 2}, {-157, 3, 3}, {-10, 3, 5}, {-826, 3, 0}, {-90, 3, 1}, {-66, 3, 4},
      {-630, 2, 0}, {-315, 1, 0}, {-70, 0, 0},
  };
  BivarPoly g;
  for (const auto& t : terms) g.add_term(t.i, t.j, t.c);
  return g;
}

Rational random_rational(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> num(lo * 97, hi * 97);
  std::uniform_int_distribution<long> den(1, 97);
  return make_rational(num(rng), den(rng));
}

TEST(BivarPoly, ArithmeticAndEvaluation) {
  const BivarPoly x = BivarPoly::monomial(1, 1, 0);
  const BivarPoly t = BivarPoly::monomial(1, 0, 1);
  const BivarPoly one = BivarPoly::constant(1);
  const BivarPoly p = pow(x + t, 3) - x * x * x;
  EXPECT_EQ(p.coeff(2, 1), Rational(3));
  EXPECT_EQ(p.coeff(3, 0), Rational(0));
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.degree_v(), 2);
  EXPECT_EQ(p.degree_t(), 3);
  EXPECT_EQ(p.evaluate(make_rational(1, 2), 2), Rational(make_rational(125, 8) - make_rational(1, 8)));
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ(pow(x + one, 0), one);
  EXPECT_EQ((x * 3 + t).str(), "3*n + t");
  EXPECT_THROW(x + x.renamed("m", "t"), DomainError);
}

TEST(BivarPoly, ExactDivisionByLinearFactors) {
  const BivarPoly n = BivarPoly::monomial(1, 1, 0);
  const BivarPoly t = BivarPoly::monomial(1, 0, 1);
  const BivarPoly q = n * n * t + t * t * 7 + BivarPoly::constant(3);
  for (Factor f : {Factor::N, Factor::NPlus1, Factor::TPlus4, Factor::TPlus1}) {
    const auto back = divide_exact(q * factor_poly(f), f);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, q);
  }
  EXPECT_FALSE(divide_exact(q, Factor::N).has_value());
  EXPECT_FALSE(divide_exact(q, Factor::NPlus1).has_value());
}

TEST(SymbolicMoments, MatchNumericCentralMoments) {
  // mu_k = r^(k mod 2) expr(n, t) with r^2 = t/(4(t+4)).
  for (const Rational& p : {make_rational(1, 5), make_rational(7, 10), make_rational(1, 2)}) {
    const Rational r = p - make_rational(1, 2);
    const Rational t = 16 * r * r / (1 - 4 * r * r);
    for (int k = 2; k <= 7; ++k) {
      const SymbolicMoment mu = symbolic_moments(k);
      EXPECT_EQ(mu.r_power, k % 2);
      for (long n : {1L, 4L, 11L}) {
        Rational value = mu.expr.evaluate(n, t);
        if (mu.r_power == 1) value *= r;
        const Real brute = central_moment_brute(binomial_pmf(n, to_real(p, P50)), k, to_real(p * n, P50));
        EXPECT_TRUE(test::Near(to_real(value, P50), brute, R("1e-40"))) << k << " " << n;
      }
    }
  }
  EXPECT_TRUE(symbolic_moments(2).expr.exponent(Factor::TPlus4) >= 1);
  EXPECT_THROW(symbolic_moments(8), DomainError);
}

TEST(SymbolicF, DenominatorAndSign) {
  const RationalExpr f = symbolic_f();
  for (const auto& [factor, e] : f.denominator()) {
    EXPECT_TRUE(factor == Factor::N || factor == Factor::NPlus1) << static_cast<int>(factor);
    if (factor == Factor::N) EXPECT_LE(e, 3);
    if (factor == Factor::NPlus1) EXPECT_LE(e, 6);
  }
  EXPECT_GT(f.evaluate(7, 0), Rational(0));
  EXPECT_LT(f.evaluate(1, 0), Rational(0));
  EXPECT_THROW(static_cast<void>(f.evaluate(0, 1)), DomainError);
}

TEST(SymbolicF, AgreesWithNumericTaylorSum) {
  // sum_k F^(k)(p) (n+1)^-k mu_k^(n+1) - (1/n - 1/(2n^2) + 1/(3n^3))/2 with p = 1/2 + sqrt(t/(4(t+4))).
  const RationalExpr f = symbolic_f();
  for (const Rational& t : {make_rational(0), make_rational(1, 3), make_rational(1), make_rational(5, 2)}) {
    const Real tr = to_real(t, P50);
    const Real p = R("0.5") + sqrt(tr / (4L * (tr + 4L)));
    for (long n : {1L, 3L, 9L, 30L}) {
      const IntegerPmf next = binomial_pmf(n + 1, p);
      const Real mean = p * (n + 1);
      Real sum(P50);
      for (int k = 2; k <= 7; ++k) {
        sum += taylor_coeff(k, p) * central_moment_brute(next, k, mean) / pow(Real(n + 1, P50), k);
      }
      const Real nn(n, P50);
      sum -= (1L / nn - 1L / (2L * nn * nn) + 1L / (3L * nn * nn * nn)) / 2L;
      EXPECT_TRUE(test::Near(to_real(f.evaluate(n, t), P50), sum, R("1e-40"))) << t.get_str() << " " << n;
      const Rational scale = 420 * n * n * n * Rational(Integer(n + 1) * (n + 1) * (n + 1) * (n + 1) * (n + 1) * (n + 1));
      EXPECT_EQ(g_poly().evaluate(n, t), Rational(f.evaluate(n, t) * scale));
    }
  }
}

TEST(Certificate, BuildGMatchesPrintedPolynomial) {
  EXPECT_EQ(g_poly(), printed_g());
  EXPECT_EQ(g_poly().degree_v(), 7);
  EXPECT_EQ(g_poly().degree_t(), 5);
}

TEST(Certificate, LinearShiftA) {
  const auto a = certify("A");
  EXPECT_TRUE(a.all_nonneg);
  EXPECT_EQ(a.polynomial.v_name(), "m");
  EXPECT_EQ(a.polynomial.t_name(), "t");
  EXPECT_EQ(a.polynomial.coeff(7, 1), Rational(35));
  EXPECT_EQ(a.polynomial.coeff(7, 0), Rational(0));
  EXPECT_EQ(a.polynomial.coeff(6, 0), Rational(70));
  EXPECT_EQ(a.polynomial.coeff(6, 1), Rational(2030));
  EXPECT_EQ(a.polynomial.coeff(6, 2), make_rational(5614, 5));
  EXPECT_EQ(a.polynomial.v_slice(6).size(), 3u);
  EXPECT_EQ(a.min_coefficient, Rational(35));
  EXPECT_EQ(a.polynomial.size(), 43u);
}

TEST(Certificate, OtherSubstitutionsAndControl) {
  for (const char* id : {"A'", "B", "C"}) {
    const auto c = certify(id);
    EXPECT_TRUE(c.all_nonneg) << id;
    EXPECT_GT(c.min_coefficient, Rational(0)) << id;
  }
  EXPECT_EQ(certify("A'").min_coefficient, Rational(35));
  EXPECT_EQ(certify("B").polynomial.size(), 71u);
  EXPECT_EQ(certify("C").min_coefficient, Rational(8960));
  const auto control = certify("control");
  EXPECT_FALSE(control.all_nonneg);
  EXPECT_EQ(control.min_coefficient, Rational(-163154));
  EXPECT_THROW(certify("Z"), DomainError);
  EXPECT_EQ(substitution_ids(), (std::vector<std::string>{"A", "A'", "B", "C", "control"}));
}

TEST(Certificate, SubstitutionsAgreeWithDirectEvaluation) {
  std::mt19937_64 rng(11);
  const BivarPoly& g = g_poly();
  const auto a = certify("A").polynomial;
  const auto b = certify("B").polynomial;
  const auto c = certify("C").polynomial;
  const int D = g.degree_t();
  for (int trial = 0; trial < 25; ++trial) {
    const Rational m = random_rational(rng, -3, 10);
    const Rational t = random_rational(rng, 0, 6);
    EXPECT_EQ(a.evaluate(m, t), g.evaluate(make_rational(111, 25) * t + 7 + m, t));
    EXPECT_EQ(b.evaluate(m, t), g.evaluate(t * t + make_rational(117, 50) * t + 7 + m, t));
    Rational scale = 1;
    for (int i = 0; i < D; ++i) scale *= 4 * (1 + t);
    EXPECT_EQ(c.evaluate(m, t), Rational(scale * g.evaluate(7 + m, t / (4 * (1 + t)))));
  }
  EXPECT_EQ(quadratic_shift_expand(g, 0, make_rational(111, 25), 7), a);
  BivarPoly s = BivarPoly::monomial(1, 1, 0, "m", "t");
  s.add_term(0, 1, make_rational(111, 25));
  s.add_term(0, 0, 7);
  EXPECT_EQ(compose_v(g, s), a);
}

TEST(Certificate, NonnegativeAboveLinearThreshold) {
  // Positive coefficients in (m, t) mean g >= 0 whenever n >= 111/25 t + 7.
  std::mt19937_64 rng(5);
  const BivarPoly& g = g_poly();
  for (int trial = 0; trial < 200; ++trial) {
    const Rational t = random_rational(rng, 0, 20);
    const Rational n = make_rational(111, 25) * t + 7 + random_rational(rng, 0, 50);
    EXPECT_GE(g.evaluate(n, t), Rational(0));
  }
  EXPECT_LT(g.evaluate(2, 0), Rational(0));
}

TEST(Certificate, SmallTSliceOfC) {
  // t = 0 in the rational substitution is t = 0 in g, times 4^D.
  const auto c = certify("C").polynomial;
  const BivarPoly& g = g_poly();
  for (long m = 0; m <= 5; ++m) {
    Rational scale = 1;
    for (int i = 0; i < g.degree_t(); ++i) scale *= 4;
    EXPECT_EQ(c.evaluate(m, 0), Rational(scale * g.evaluate(7 + m, 0)));
  }
  EXPECT_EQ(c.evaluate(2, make_rational(1, 8)),
            Rational(g.evaluate(9, make_rational(1, 36)) * Rational(make_rational(9, 2) * make_rational(9, 2) *
                                                                    make_rational(9, 2) * make_rational(9, 2) *
                                                                    make_rational(9, 2))));
}

TEST(PrintedTable, RoundsToExactCoefficients) {
  const std::vector<PrintedCoefficient> printed = {
      {7, 1, "35", 0},
      {6, 2, "1122.8", 0},   {6, 1, "2030", 0},     {6, 0, "70", 0},
      {5, 3, "14700.90", 0}, {5, 2, "52210.20", 0}, {5, 1, "48120.80", 0}, {5, 0, "2625", 0},
      {4, 4, "1.01", 5},     {4, 3, "5.32", 5},     {4, 2, "9.57", 5},     {4, 1, "6.06", 5},
      {4, 0, "0.40", 5},
      {3, 5, "3.85", 5},     {3, 4, "26.94", 5},    {3, 3, "72.32", 5},    {3, 2, "88.61", 5},
      {3, 1, "43.61", 5},    {3, 0, "3.02", 5},
      {2, 6, "7.76", 5},     {2, 5, "68.23", 5},    {2, 4, "247.042", 5},  {2, 3, "456.97", 5},
      {2, 2, "433.17", 5},   {2, 1, "176.77", 5},   {2, 0, "11.80", 5},
      {1, 7, "6.47", 5},     {1, 6, "70.91", 5},    {1, 5, "338.88", 5},   {1, 4, "880.98", 5},
      {1, 3, "1297.85", 5},  {1, 2, "1030.51", 5},  {1, 1, "361.59", 5},   {1, 0, "20.14", 5},
      {0, 8, "0.15", 4},     {0, 7, "56.29", 4},    {0, 6, "709.80", 4},   {0, 5, "3485.03", 4},
      {0, 4, "8728.40", 4},  {0, 3, "11955.74", 4}, {0, 2, "8613.06", 4},  {0, 1, "2628.77", 4},
      {0, 0, "64.15", 4},
  };
  const auto a = certify("A").polynomial;
  ASSERT_EQ(printed.size(), a.size());
  const auto audit = audit_printed(a, printed);
  for (const auto& row : audit) {
    const bool odd_one = row.printed.deg_m == 2 && row.printed.deg_t == 4;
    EXPECT_EQ(row.verdict, odd_one ? RoundingVerdict::LastDigit : RoundingVerdict::Rounded)
        << row.printed.deg_m << "," << row.printed.deg_t << " exact " << to_string(row.exact);
  }
  EXPECT_EQ(to_string(RoundingVerdict::LastDigit), "last-digit");
}

TEST(Golden, CertificatesMatchIndependentExpansion) {
  const std::pair<const char*, const char*> cases[] = {
      {"A", "certify_A.json"}, {"A'", "certify_Aprime.json"}, {"B", "certify_B.json"},
      {"C", "certify_C.json"}, {"control", "certify_control.json"}};
  for (const auto& [id, file] : cases) {
    std::ifstream in(std::string(EPI_GOLDEN_DIR) + "/" + file);
    ASSERT_TRUE(in) << file;
    const auto golden = nlohmann::json::parse(in);
    const auto report = certify(id);
    EXPECT_EQ(golden["substitution"], id);
    EXPECT_EQ(golden["all_nonneg"].get<bool>(), report.all_nonneg);
    EXPECT_EQ(parse_rational(golden["min_coefficient"].get<std::string>()), report.min_coefficient);
    ASSERT_EQ(golden["coefficients"].size(), report.polynomial.size()) << id;
    for (const auto& row : golden["coefficients"]) {
      EXPECT_EQ(report.polynomial.coeff(row[0].get<int>(), row[1].get<int>()), parse_rational(row[2].get<std::string>()))
          << id << " " << row.dump();
    }
  }
}

}  // namespace
}  // namespace epi
