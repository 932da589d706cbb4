#include "epi/polycert.hpp"

#include <algorithm>
#include <sstream>

#include "epi/detail/closed_moments.hpp"
#include "epi/errors.hpp"

namespace epi {

namespace {

void require_same_names(const BivarPoly& a, const BivarPoly& b) {
  if (a.v_name() != b.v_name() || a.t_name() != b.t_name()) {
    throw DomainError("polynomial variable mismatch: (" + a.v_name() + "," + a.t_name() + ") vs (" + b.v_name() + "," +
                      b.t_name() + ")");
  }
}

Rational rational_pow(const Rational& x, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

Rational ten_pow(int e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, p) : Rational(p);
}

// (deg_v desc, deg_t asc)
std::vector<std::pair<BivarPoly::Key, Rational>> dump_order(const BivarPoly& p) {
  std::vector<std::pair<BivarPoly::Key, Rational>> out(p.terms().begin(), p.terms().end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.first != b.first.first) return a.first.first > b.first.first;
    return a.first.second < b.first.second;
  });
  return out;
}

struct LinearFactor {
  bool on_v;
  long c;  // the factor is x + c
};

LinearFactor describe(Factor f) {
  switch (f) {
    case Factor::N:
      return {true, 0};
    case Factor::NPlus1:
      return {true, 1};
    case Factor::TPlus4:
      return {false, 4};
    case Factor::TPlus1:
      return {false, 1};
  }
  throw DomainError("unknown factor");
}

// Polynomial in (n, r) with only even powers of r, as Q(n,t) / (t+4)^J.
RationalExpr eliminate_r_squared(const BivarPoly& p) {
  int top = 0;
  for (const auto& [key, c] : p.terms()) {
    if (key.second % 2 != 0) {
      throw ConsistencyError("odd power r^" + std::to_string(key.second) + " survived the pairing step");
    }
    top = std::max(top, key.second / 2);
  }
  const BivarPoly t_plus_4 = factor_poly(Factor::TPlus4);
  BivarPoly q;
  for (const auto& [key, c] : p.terms()) {
    const int j = key.second / 2;
    BivarPoly term = BivarPoly::monomial(c / rational_pow(Rational(4), j), key.first, j);
    q += term * pow(t_plus_4, top - j);
  }
  return RationalExpr(std::move(q), {{Factor::TPlus4, top}});
}

BivarPoly moment_in_r(int k, const BivarPoly& n) {
  const BivarPoly r = BivarPoly::monomial(1, 0, 1, "n", "r");
  const BivarPoly one = BivarPoly::constant(1, "n", "r");
  return detail::closed_central_moment(k, n, r, one, [](const BivarPoly& x, long num, long den) {
    return x * make_rational(num, den);
  });
}

}  // namespace

BivarPoly::BivarPoly(std::string v, std::string t) : v_(std::move(v)), t_(std::move(t)) {}

BivarPoly BivarPoly::constant(const Rational& c, std::string v, std::string t) {
  return monomial(c, 0, 0, std::move(v), std::move(t));
}

BivarPoly BivarPoly::monomial(const Rational& c, int i, int j, std::string v, std::string t) {
  BivarPoly out(std::move(v), std::move(t));
  out.add_term(i, j, c);
  return out;
}

Rational BivarPoly::coeff(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BivarPoly::degree_v() const {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first);
  return d;
}

int BivarPoly::degree_t() const {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.second);
  return d;
}

BivarPoly BivarPoly::v_slice(int i) const {
  BivarPoly out(v_, t_);
  for (const auto& [key, c] : terms_) {
    if (key.first == i) out.terms_.emplace(Key{0, key.second}, c);
  }
  return out;
}

Rational BivarPoly::evaluate(const Rational& v, const Rational& t) const {
  Rational sum = 0;
  for (const auto& [key, c] : terms_) sum += c * rational_pow(v, key.first) * rational_pow(t, key.second);
  return sum;
}

BivarPoly BivarPoly::renamed(std::string v, std::string t) const {
  BivarPoly out(std::move(v), std::move(t));
  out.terms_ = terms_;
  return out;
}

void BivarPoly::add_term(int i, int j, const Rational& c) {
  if (i < 0 || j < 0) throw DomainError("negative exponent in polynomial term");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  require_same_names(*this, rhs);
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) {
  require_same_names(*this, rhs);
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, -c);
  return *this;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& rhs) {
  require_same_names(*this, rhs);
  BivarPoly out(v_, t_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : rhs.terms_) out.add_term(a.first + b.first, a.second + b.second, ca * cb);
  }
  terms_ = std::move(out.terms_);
  return *this;
}

BivarPoly& BivarPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, value] : terms_) value *= c;
  return *this;
}

std::string BivarPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : dump_order(*this)) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    const bool unit = mag == 1 && (key.first > 0 || key.second > 0);
    bool need_star = false;
    if (!unit) {
      out << to_string(mag);
      need_star = true;
    }
    auto var = [&](const std::string& name, int d) {
      if (d == 0) return;
      if (need_star) out << "*";
      out << name;
      if (d > 1) out << "^" << d;
      need_star = true;
    };
    var(v_, key.first);
    var(t_, key.second);
  }
  return out.str();
}

BivarPoly pow(const BivarPoly& x, int e) {
  if (e < 0) throw DomainError("negative polynomial power");
  BivarPoly out = BivarPoly::constant(1, x.v_name(), x.t_name());
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

BivarPoly factor_poly(Factor f, const std::string& v, const std::string& t) {
  const auto lf = describe(f);
  BivarPoly out = lf.on_v ? BivarPoly::monomial(1, 1, 0, v, t) : BivarPoly::monomial(1, 0, 1, v, t);
  out.add_term(0, 0, lf.c);
  return out;
}

std::optional<BivarPoly> divide_exact(const BivarPoly& p, Factor f) {
  const auto lf = describe(f);
  // Group by the degree of the other variable; divide each univariate slice.
  std::map<int, std::map<int, Rational>> slices;
  for (const auto& [key, c] : p.terms()) {
    const int x_deg = lf.on_v ? key.first : key.second;
    const int other = lf.on_v ? key.second : key.first;
    slices[other][x_deg] = c;
  }
  BivarPoly out(p.v_name(), p.t_name());
  for (const auto& [other, coeffs] : slices) {
    const int d = coeffs.rbegin()->first;
    // Synthetic division by x - root with root = -c.
    Rational carry = 0;
    for (int i = d; i >= 1; --i) {
      const auto it = coeffs.find(i);
      carry = (it == coeffs.end() ? Rational(0) : it->second) - lf.c * carry;
      if (lf.on_v) {
        out.add_term(i - 1, other, carry);
      } else {
        out.add_term(other, i - 1, carry);
      }
    }
    const auto it0 = coeffs.find(0);
    const Rational remainder = (it0 == coeffs.end() ? Rational(0) : it0->second) - lf.c * carry;
    if (remainder != 0) return std::nullopt;
  }
  return out;
}

RationalExpr::RationalExpr(BivarPoly numerator, std::map<Factor, int> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  for (const auto& [f, e] : den_) {
    if (e < 0) throw DomainError("negative denominator exponent");
  }
  cancel();
}

int RationalExpr::exponent(Factor f) const {
  const auto it = den_.find(f);
  return it == den_.end() ? 0 : it->second;
}

Rational RationalExpr::evaluate(const Rational& v, const Rational& t) const {
  Rational den = 1;
  for (const auto& [f, e] : den_) {
    const Rational value = factor_poly(f).evaluate(v, t);
    if (value == 0) throw DomainError("rational expression evaluated at a pole");
    den *= rational_pow(value, e);
  }
  return num_.evaluate(v, t) / den;
}

RationalExpr RationalExpr::times(Factor f, int e) const {
  RationalExpr out = *this;
  const int current = exponent(f);
  if (e >= current) {
    out.den_.erase(f);
    out.num_ *= pow(factor_poly(f, num_.v_name(), num_.t_name()), e - current);
  } else {
    out.den_[f] = current - e;
  }
  out.cancel();
  return out;
}

RationalExpr RationalExpr::times(const Rational& c) const {
  RationalExpr out = *this;
  out.num_ *= c;
  out.cancel();
  return out;
}

RationalExpr& RationalExpr::operator+=(const RationalExpr& rhs) {
  std::map<Factor, int> common = den_;
  for (const auto& [f, e] : rhs.den_) common[f] = std::max(common[f], e);
  auto lift = [&](const RationalExpr& x) {
    BivarPoly p = x.num_;
    for (const auto& [f, e] : common) p *= pow(factor_poly(f, p.v_name(), p.t_name()), e - x.exponent(f));
    return p;
  };
  BivarPoly sum = lift(*this);
  sum += lift(rhs);
  num_ = std::move(sum);
  den_ = std::move(common);
  cancel();
  return *this;
}

void RationalExpr::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = divide_exact(num_, it->first);
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

SymbolicMoment symbolic_moments(int k) {
  if (k < 2 || k > 7) throw DomainError("symbolic_moments needs k in 2..7");
  BivarPoly mu = moment_in_r(k, BivarPoly::monomial(1, 1, 0, "n", "r"));
  const int r_power = k % 2;
  if (r_power == 1) {
    BivarPoly reduced("n", "r");
    for (const auto& [key, c] : mu.terms()) {
      if (key.second == 0) throw ConsistencyError("odd moment without a factor r");
      reduced.add_term(key.first, key.second - 1, c);
    }
    mu = std::move(reduced);
  }
  RationalExpr expr = eliminate_r_squared(mu);
  return {k, r_power, std::move(expr)};
}

RationalExpr symbolic_f() {
  const BivarPoly half_plus_r = BivarPoly::monomial(1, 0, 1, "n", "r") + BivarPoly::constant(make_rational(1, 2), "n", "r");
  const BivarPoly half_minus_r =
      BivarPoly::constant(make_rational(1, 2), "n", "r") - BivarPoly::monomial(1, 0, 1, "n", "r");
  const BivarPoly n_plus_1 = BivarPoly::monomial(1, 1, 0, "n", "r") + BivarPoly::constant(1, "n", "r");

  // -(1/n - 1/(2n^2) + 1/(3n^3)) / 2 = -(6n^2 - 3n + 2) / (12 n^3)
  BivarPoly tail;
  tail.add_term(2, 0, -6);
  tail.add_term(1, 0, 3);
  tail.add_term(0, 0, -2);
  RationalExpr f(tail * make_rational(1, 12), {{Factor::N, 3}});

  // k = 1 drops out: mu_1 = 0.
  for (int k = 2; k <= 7; ++k) {
    // F^(k)(1/2 + r) = [(1/2 + r)^(k-1) + (-1)^k (1/2 - r)^(k-1)] (t+4)^(k-1) / (k(k-1))
    BivarPoly f_num = pow(half_plus_r, k - 1);
    if (k % 2 == 0) {
      f_num += pow(half_minus_r, k - 1);
    } else {
      f_num -= pow(half_minus_r, k - 1);
    }
    const BivarPoly product = f_num * moment_in_r(k, n_plus_1);
    RationalExpr term = eliminate_r_squared(product)
                            .times(Factor::TPlus4, k - 1)
                            .times(Factor::NPlus1, -k)
                            .times(make_rational(1, static_cast<long>(k) * (k - 1)));
    f += term;
  }
  return f;
}

BivarPoly build_g() {
  const RationalExpr g = symbolic_f().times(Factor::NPlus1, 6).times(Factor::N, 3).times(Rational(420));
  if (!g.is_polynomial()) throw ConsistencyError("420 (n+1)^6 n^3 f(n,t) left a non-polynomial remainder");
  return g.numerator();
}

BivarPoly compose_v(const BivarPoly& g, const BivarPoly& s) {
  BivarPoly acc(s.v_name(), s.t_name());
  for (int i = g.degree_v(); i >= 0; --i) {
    acc *= s;
    acc += g.v_slice(i).renamed(s.v_name(), s.t_name());
  }
  return acc;
}

BivarPoly shift_expand(const BivarPoly& g, const Rational& a, const Rational& b) {
  return quadratic_shift_expand(g, 0, a, b);
}

BivarPoly quadratic_shift_expand(const BivarPoly& g, const Rational& a2, const Rational& a1, const Rational& b) {
  BivarPoly s = BivarPoly::monomial(1, 1, 0, "m", "t");
  s.add_term(0, 2, a2);
  s.add_term(0, 1, a1);
  s.add_term(0, 0, b);
  return compose_v(g, s);
}

BivarPoly rational_substitute_t(const BivarPoly& g, const Rational& n_shift) {
  const BivarPoly h = shift_expand(g, 0, n_shift);
  const int D = h.degree_t();
  const BivarPoly one_plus_t = factor_poly(Factor::TPlus1, "m", "t");
  BivarPoly out("m", "t");
  for (const auto& [key, c] : h.terms()) {
    // t^j (4(1+t))^(D-j) / 4^0 per monomial m^i tau^j
    BivarPoly term = BivarPoly::monomial(c * rational_pow(Rational(4), D - key.second), key.first, key.second, "m", "t");
    out += term * pow(one_plus_t, D - key.second);
  }
  return out;
}

std::vector<std::string> substitution_ids() { return {"A", "A'", "B", "C", "control"}; }

CertificateReport make_certificate(std::string id, std::string description, BivarPoly poly) {
  Rational lowest = 0;
  bool first = true;
  for (const auto& [key, c] : poly.terms()) {
    if (first || c < lowest) lowest = c;
    first = false;
  }
  const bool nonneg = lowest >= 0;
  return {std::move(id), std::move(description), std::move(poly), lowest, nonneg};
}

CertificateReport certify(const std::string& sub_id, const BivarPoly& g) {
  if (sub_id == "A") return make_certificate(sub_id, "n = 111/25*t + 7 + m", shift_expand(g, make_rational(111, 25), 7));
  if (sub_id == "A'") {
    return make_certificate(sub_id, "n = 2219/500*t + 7 + m", shift_expand(g, make_rational(2219, 500), 7));
  }
  if (sub_id == "B") {
    return make_certificate(sub_id, "n = t^2 + 117/50*t + 7 + m",
                            quadratic_shift_expand(g, 1, make_rational(117, 50), 7));
  }
  if (sub_id == "C") {
    return make_certificate(sub_id, "n = 7 + m, t -> t/(4(1+t)), times (4(1+t))^deg_t", rational_substitute_t(g, 7));
  }
  if (sub_id == "control") return make_certificate(sub_id, "n = t + 1 + m", shift_expand(g, 1, 1));
  throw DomainError("unknown substitution '" + sub_id + "' (expected A, A', B, C or control)");
}

CertificateReport certify(const std::string& sub_id) {
  static const BivarPoly g = build_g();
  return certify(sub_id, g);
}

std::vector<CoefficientAudit> audit_printed(const BivarPoly& exact, const std::vector<PrintedCoefficient>& printed) {
  std::vector<CoefficientAudit> out;
  out.reserve(printed.size());
  for (const auto& entry : printed) {
    const auto dot = entry.value.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(entry.value.size() - dot - 1);
    const Rational shown = parse_rational(entry.value) * ten_pow(entry.scale);
    const Rational unit = ten_pow(entry.scale - decimals);
    const Rational value = exact.coeff(entry.deg_m, entry.deg_t);
    const Rational diff = value - shown;
    const Rational mag = abs(diff);
    RoundingVerdict verdict = RoundingVerdict::Mismatch;
    if (mag * 2 <= unit) {
      verdict = RoundingVerdict::Rounded;
    } else if (mag <= unit) {
      verdict = RoundingVerdict::LastDigit;
    }
    out.push_back({entry, value, diff, verdict});
  }
  return out;
}

std::string to_string(RoundingVerdict v) {
  switch (v) {
    case RoundingVerdict::Rounded:
      return "rounded";
    case RoundingVerdict::LastDigit:
      return "last-digit";
    case RoundingVerdict::Mismatch:
      return "mismatch";
  }
  return "mismatch";
}

}  // namespace epi
