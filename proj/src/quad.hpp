#pragma once

// Internal 113-bit helpers shared by the zeta and Euler-product code.

#include <quadmath.h>

#include "sqflab/approx.hpp"

namespace sqflab::detail {

using Quad = __float128;

struct QuadApprox {
  Quad value = 0;
  Quad abs_err = 0;
};

inline constexpr Quad kQuadEps = FLT128_EPSILON;

inline Quad qabs(Quad x) { return x < 0 ? -x : x; }

inline QuadApprox operator*(const QuadApprox& a, const QuadApprox& b) {
  const Quad v = a.value * b.value;
  return {v, qabs(a.value) * b.abs_err + qabs(b.value) * a.abs_err + a.abs_err * b.abs_err +
                 qabs(v) * kQuadEps};
}

inline QuadApprox operator/(const QuadApprox& a, const QuadApprox& b) {
  // Valid while |b.abs_err| < |b.value| / 2.
  const Quad v = a.value / b.value;
  const Quad bv = qabs(b.value) - b.abs_err;
  return {v, (a.abs_err + qabs(v) * b.abs_err) / bv + qabs(v) * kQuadEps};
}

/// Rounds to Real and folds the conversion error into the bound.
inline ApproxReal to_approx(const QuadApprox& q) {
  const Real v = static_cast<Real>(q.value);
  const Quad conv = qabs(q.value - static_cast<Quad>(v));
  return {v, static_cast<Real>(q.abs_err + conv) * (1 + 4 * kRealEps)};
}

QuadApprox zeta_quad(Quad s);

}  // namespace sqflab::detail
