#include "epi/rational.hpp"

#include <cctype>

#include "epi/errors.hpp"

namespace epi {

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational literal");
  try {
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      for (char c : frac) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("bad decimal literal: " + s);
      }
      Integer scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      Rational out(Integer(s.substr(0, dot) + frac, 10), scale);
      out.canonicalize();
      return out;
    }
    Rational out(s, 10);
    if (out.get_den() == 0) throw DomainError("zero denominator: " + s);
    out.canonicalize();
    return out;
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational literal: " + s);
  }
}

std::string to_string(const Rational& x) { return x.get_str(); }

Real to_real(const Rational& x, Precision prec) {
  Real out(prec);
  mpfr_set_q(out.get(), x.get_mpq_t(), MPFR_RNDN);
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace epi
