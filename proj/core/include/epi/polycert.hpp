#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epi/rational.hpp"

namespace epi {

/// Polynomial in two named variables (v, t) with exact rational coefficients.
/// Zero coefficients are never stored.
class BivarPoly {
 public:
  using Key = std::pair<int, int>;  // (deg_v, deg_t)

  BivarPoly(std::string v = "n", std::string t = "t");
  static BivarPoly constant(const Rational& c, std::string v = "n", std::string t = "t");
  /// c * v^i * t^j
  static BivarPoly monomial(const Rational& c, int i, int j, std::string v = "n", std::string t = "t");

  [[nodiscard]] const std::string& v_name() const { return v_; }
  [[nodiscard]] const std::string& t_name() const { return t_; }
  [[nodiscard]] const std::map<Key, Rational>& terms() const { return terms_; }
  [[nodiscard]] Rational coeff(int i, int j) const;
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] int degree_v() const;
  [[nodiscard]] int degree_t() const;
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Coefficient of v^i as a polynomial in t alone (same variable names).
  [[nodiscard]] BivarPoly v_slice(int i) const;

  [[nodiscard]] Rational evaluate(const Rational& v, const Rational& t) const;

  /// Same coefficients under new variable names.
  [[nodiscard]] BivarPoly renamed(std::string v, std::string t) const;

  void add_term(int i, int j, const Rational& c);

  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  BivarPoly& operator*=(const BivarPoly& rhs);
  BivarPoly& operator*=(const Rational& c);

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(BivarPoly a, const BivarPoly& b) { return a *= b; }
  friend BivarPoly operator*(BivarPoly a, const Rational& c) { return a *= c; }
  friend BivarPoly operator-(BivarPoly a) { return a *= Rational(-1); }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

  /// "35*n^7*t + ..." in (deg_v desc, deg_t asc) order.
  [[nodiscard]] std::string str() const;

 private:
  std::string v_;
  std::string t_;
  std::map<Key, Rational> terms_;
};

BivarPoly pow(const BivarPoly& x, int e);

/// Linear factors allowed in RationalExpr denominators.
enum class Factor { N, NPlus1, TPlus4, TPlus1 };

/// The factor as a polynomial in (v, t).
BivarPoly factor_poly(Factor f, const std::string& v = "n", const std::string& t = "t");

/// Exact division by a linear factor; empty when it leaves a remainder.
std::optional<BivarPoly> divide_exact(const BivarPoly& p, Factor f);

/// numerator / prod factor^e, e >= 0, with divisible factors cancelled.
class RationalExpr {
 public:
  explicit RationalExpr(BivarPoly numerator, std::map<Factor, int> denominator = {});

  [[nodiscard]] const BivarPoly& numerator() const { return num_; }
  [[nodiscard]] const std::map<Factor, int>& denominator() const { return den_; }
  /// Exponent of f in the denominator (0 if absent).
  [[nodiscard]] int exponent(Factor f) const;
  [[nodiscard]] bool is_polynomial() const { return den_.empty(); }

  /// Throws DomainError when a denominator factor vanishes at (v, t).
  [[nodiscard]] Rational evaluate(const Rational& v, const Rational& t) const;

  /// Multiplies by f^e (e may be negative).
  [[nodiscard]] RationalExpr times(Factor f, int e) const;
  [[nodiscard]] RationalExpr times(const Rational& c) const;

  RationalExpr& operator+=(const RationalExpr& rhs);
  friend RationalExpr operator+(RationalExpr a, const RationalExpr& b) { return a += b; }

 private:
  void cancel();

  BivarPoly num_;
  std::map<Factor, int> den_;
};

/// mu_k^(n) of B(n,p) = r^r_power * expr(n, t), with r = p - 1/2 and r^2
/// eliminated through r^2 = t / (4(t+4)).
struct SymbolicMoment {
  int k = 0;
  int r_power = 0;
  RationalExpr expr;
};

SymbolicMoment symbolic_moments(int k);

/// sum_{k=1}^{7} F^(k)(p) (n+1)^-k mu_k^(n+1) - (1/n - 1/(2n^2) + 1/(3n^3)) / 2,
/// exact in (n, t) after every odd power of r has been paired.
RationalExpr symbolic_f();

/// 420 (n+1)^6 n^3 f(n, t). Throws ConsistencyError if that is not a polynomial.
BivarPoly build_g();

/// p(v = a t + b + m, t), variables (m, t).
BivarPoly shift_expand(const BivarPoly& g, const Rational& a, const Rational& b);
/// p(v = a2 t^2 + a1 t + b + m, t), variables (m, t).
BivarPoly quadratic_shift_expand(const BivarPoly& g, const Rational& a2, const Rational& a1, const Rational& b);
/// Substitutes v -> s where s is a polynomial in (m, t).
BivarPoly compose_v(const BivarPoly& g, const BivarPoly& s);

/// (4(1+t))^D g(n_shift + m, t / (4(1+t))) with D = deg_t g, variables (m, t).
BivarPoly rational_substitute_t(const BivarPoly& g, const Rational& n_shift);

struct CertificateReport {
  std::string substitution;
  std::string description;
  BivarPoly polynomial;  // variables (m, t)
  Rational min_coefficient;
  bool all_nonneg = false;
};

/// Known substitutions: "A", "A'", "B", "C", "control".
std::vector<std::string> substitution_ids();
/// Throws DomainError for an unknown id.
CertificateReport certify(const std::string& sub_id);
CertificateReport certify(const std::string& sub_id, const BivarPoly& g);
/// Report for an already-substituted polynomial.
CertificateReport make_certificate(std::string id, std::string description, BivarPoly poly);

/// A decimal value printed with a fixed number of decimals, times 10^scale.
struct PrintedCoefficient {
  int deg_m = 0;
  int deg_t = 0;
  std::string value;  // e.g. "247.042"
  int scale = 0;      // power of ten the printed value is multiplied by
};

enum class RoundingVerdict { Rounded, LastDigit, Mismatch };

struct CoefficientAudit {
  PrintedCoefficient printed;
  Rational exact;
  Rational difference;  // exact - printed * 10^scale
  RoundingVerdict verdict = RoundingVerdict::Mismatch;
};

/// Rounded: within half a unit of the last printed digit. LastDigit: within
/// one unit. Mismatch otherwise.
std::vector<CoefficientAudit> audit_printed(const BivarPoly& exact, const std::vector<PrintedCoefficient>& printed);

std::string to_string(RoundingVerdict v);

}  // namespace epi
