#include "epi/real.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epi/errors.hpp"

namespace epi {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;
constexpr mpfr_prec_t kGuardBits = 16;
constexpr mpfr_rnd_t kRound = MPFR_RNDN;

Precision wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

mpfr_prec_t Precision::bits() const {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + kGuardBits;
}

Real::Real(Precision prec) : prec_(prec) {
  if (prec.digits < 1) throw DomainError("precision must be positive");
  mpfr_init2(value_, prec.bits());
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision prec) : Real(prec) { mpfr_set_si(value_, value, kRound); }

Real::Real(const Real& other) : prec_(other.prec_) {
  mpfr_init2(value_, prec_.bits());
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept : prec_(other.prec_) {
  // Leave `other` holding a valid zero so its destructor stays well-defined.
  mpfr_init2(value_, prec_.bits());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (prec_ != other.prec_) {
      prec_ = other.prec_;
      mpfr_set_prec(value_, prec_.bits());
    }
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    std::swap(prec_, other.prec_);
    mpfr_swap(value_, other.value_);
  }
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, Precision prec) {
  Real out(prec);
  std::string buf(text);
  char* end = nullptr;
  if (!buf.empty()) mpfr_strtofr(out.value_, buf.c_str(), &end, 10, kRound);
  if (buf.empty() || end != buf.c_str() + buf.size() || !out.is_finite()) {
    throw DomainError("not a decimal number: '" + buf + "'");
  }
  return out;
}

Real Real::from_double(double value, Precision prec) {
  Real out(prec);
  mpfr_set_d(out.value_, value, kRound);
  return out;
}

Real Real::ratio(long num, long den, Precision prec) {
  if (den == 0) throw DomainError("zero denominator");
  Real out(num, prec);
  mpfr_div_si(out.value_, out.value_, den, kRound);
  return out;
}

Real Real::pi(Precision prec) {
  Real out(prec);
  mpfr_const_pi(out.value_, kRound);
  return out;
}

Real Real::ln2(Precision prec) {
  Real out(prec);
  mpfr_const_log2(out.value_, kRound);
  return out;
}

Real Real::infinity(Precision prec) {
  Real out(prec);
  mpfr_set_inf(out.value_, 1);
  return out;
}

Real Real::at(Precision prec) const {
  Real out(prec);
  mpfr_set(out.value_, value_, kRound);
  return out;
}

double Real::to_double() const { return mpfr_get_d(value_, kRound); }

std::string Real::str(int digits) const {
  if (digits <= 0) digits = prec_.digits;
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRound);
  return *this;
}
Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRound);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  return *this;
}
Real& Real::operator/=(long rhs) {
  if (rhs == 0) throw DomainError("division by zero");
  mpfr_div_si(value_, value_, rhs, kRound);
  return *this;
}

Real operator-(const Real& x) {
  Real out(x.prec_);
  mpfr_neg(out.value_, x.value_, kRound);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Real operator+(const Real& a, const Real& b) {
  Real out(wider(a, b));
  mpfr_add(out.get(), a.get(), b.get(), kRound);
  return out;
}
Real operator-(const Real& a, const Real& b) {
  Real out(wider(a, b));
  mpfr_sub(out.get(), a.get(), b.get(), kRound);
  return out;
}
Real operator*(const Real& a, const Real& b) {
  Real out(wider(a, b));
  mpfr_mul(out.get(), a.get(), b.get(), kRound);
  return out;
}
Real operator/(const Real& a, const Real& b) {
  Real out(wider(a, b));
  mpfr_div(out.get(), a.get(), b.get(), kRound);
  return out;
}

Real operator+(const Real& a, long b) { return Real(a) += b; }
Real operator-(const Real& a, long b) { return Real(a) -= b; }
Real operator*(const Real& a, long b) { return Real(a) *= b; }
Real operator/(const Real& a, long b) { return Real(a) /= b; }
Real operator+(long a, const Real& b) { return Real(b) += a; }
Real operator-(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_sub(out.get(), a, b.get(), kRound);
  return out;
}
Real operator*(long a, const Real& b) { return Real(b) *= a; }
Real operator/(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_div(out.get(), a, b.get(), kRound);
  return out;
}

Real abs(const Real& x) {
  Real out(x.precision());
  mpfr_abs(out.get(), x.get(), kRound);
  return out;
}

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  Real out(x.precision());
  mpfr_sqrt(out.get(), x.get(), kRound);
  return out;
}

Real log(const Real& x) {
  if (x.sign() < 0) throw DomainError("log of a negative number");
  Real out(x.precision());
  mpfr_log(out.get(), x.get(), kRound);
  return out;
}

Real log1p(const Real& x) {
  Real out(x.precision());
  mpfr_log1p(out.get(), x.get(), kRound);
  return out;
}

Real exp(const Real& x) {
  Real out(x.precision());
  mpfr_exp(out.get(), x.get(), kRound);
  return out;
}

Real pow(const Real& x, long n) {
  Real out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, kRound);
  return out;
}

Real pow(const Real& x, const Real& y) {
  Real out(wider(x, y));
  mpfr_pow(out.get(), x.get(), y.get(), kRound);
  return out;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

long ceil_to_long(const Real& x) {
  Real c(x.precision());
  mpfr_ceil(c.get(), x.get());
  if (!mpfr_fits_slong_p(c.get(), kRound)) throw DomainError("value does not fit in a long: " + x.str(20));
  return mpfr_get_si(c.get(), kRound);
}

Real xlogx(const Real& x) {
  if (x.is_zero()) return Real(x.precision());
  return x * log(x);
}

Real tolerance(Precision prec) {
  Real out(10, prec);
  mpfr_pow_si(out.get(), out.get(), -(prec.digits - 10), kRound);
  return out;
}

}  // namespace epi
