#pragma once

#include "epi/errors.hpp"

namespace epi::detail {

/// Central moments mu_k of B(n,p), k = 2..7, as polynomials in n and r = p - 1/2.
///
/// Generic over the scalar so the same table drives numeric evaluation and the
/// symbolic certificate pipeline. `scale(x, num, den)` must return x*num/den.
/// The sixth moment carries the prefactor 1/64 (checked against brute force).
template <class S, class Scale>
S closed_central_moment(int k, const S& n, const S& r, const S& one, Scale scale) {
  const S r2 = r * r;
  const S r4 = r2 * r2;
  const S s = one - scale(r2, 4, 1);  // 1 - 4r^2
  switch (k) {
    case 2:
      return scale(n * s, 1, 4);
    case 3:
      return scale(n * r * s, -1, 2);
    case 4:
      return scale(n * s * (scale(one, -2, 1) + scale(r2, 24, 1) + scale(n * s, 3, 1)), 1, 16);
    case 5:
      return scale(n * r * s * (scale(one, -4, 1) + scale(r2, 24, 1) + scale(n * s, 5, 1)), -1, 4);
    case 6: {
      const S a = scale(n * n * s * s, 15, 1);
      const S b = scale(one - scale(r2, 30, 1) + scale(r4, 120, 1), 16, 1);
      const S c = scale(n * (scale(one, 3, 1) - scale(r2, 64, 1) + scale(r4, 208, 1)), 10, 1);
      return scale(n * s * (a + b - c), 1, 64);
    }
    case 7: {
      const S a = scale(n * n * s * s, 105, 1);
      const S b = scale(n * (scale(one, 17, 1) - scale(r2, 200, 1) + scale(r4, 528, 1)), 14, 1);
      const S c = scale(one, 17, 1) - scale(r2, 240, 1) + scale(r4, 720, 1);
      return scale(n * r * s * (a - b + scale(c, 8, 1)), -1, 32);
    }
    default:
      throw DomainError("closed-form central moments exist for k = 2..7 only");
  }
}

}  // namespace epi::detail
