#pragma once

#include "sqflab/approx.hpp"

namespace sqflab {

/// Riemann zeta at real s != 1 with s > -25, by Euler-Maclaurin summation in
/// 113-bit arithmetic. The bound covers the remainder and the rounding.
ApproxReal zeta(Real s);

/// pi to Real precision (exact to the last bit).
Real pi_real();

}  // namespace sqflab
