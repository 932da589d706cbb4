#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace epi {

inline constexpr int kDefaultDigits = 50;
inline constexpr int kMinDigits = 20;

/// Working precision in significant decimal digits.
struct Precision {
  int digits = kDefaultDigits;

  /// Binary precision handed to MPFR; includes a few guard bits.
  [[nodiscard]] mpfr_prec_t bits() const;

  friend constexpr bool operator==(Precision, Precision) = default;
  friend constexpr auto operator<=>(Precision, Precision) = default;
};

/// Extended-precision real backed by an MPFR value.
///
/// Every value carries its own precision. Binary operations produce a result at
/// the larger of the two operand precisions and round to nearest, so the same
/// inputs always give bit-identical outputs.
class Real {
 public:
  explicit Real(Precision prec = {});
  Real(long value, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal literal ("0.3", "1e-3", "-2.5") rounded to `prec`.
  /// Throws DomainError on malformed input.
  static Real parse(std::string_view text, Precision prec);
  static Real from_double(double value, Precision prec);
  /// num/den computed at `prec` (den != 0).
  static Real ratio(long num, long den, Precision prec);
  static Real pi(Precision prec);
  static Real ln2(Precision prec);
  static Real infinity(Precision prec);

  [[nodiscard]] Precision precision() const { return prec_; }
  /// Same value re-rounded to another precision.
  [[nodiscard]] Real at(Precision prec) const;

  [[nodiscard]] mpfr_srcptr get() const { return value_; }
  [[nodiscard]] mpfr_ptr get() { return value_; }

  [[nodiscard]] double to_double() const;
  /// Decimal rendering with `digits` significant digits (0 = working precision).
  [[nodiscard]] std::string str(int digits = 0) const;

  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator-(const Real& x);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  Precision prec_;
  mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// Smallest integer >= x. Throws DomainError if x does not fit in a long.
long ceil_to_long(const Real& x);

/// x ln x with the 0 ln 0 = 0 convention.
Real xlogx(const Real& x);

/// Comparison tolerance 10^-(P-10) for working precision P.
Real tolerance(Precision prec);

}  // namespace epi
