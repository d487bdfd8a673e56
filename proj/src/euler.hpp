#pragma once

#include "quad.hpp"
#include "sqflab/multiplicative.hpp"

namespace sqflab::detail {

/// prod_p f(p) via zeta-factor acceleration, in 113-bit arithmetic.
QuadApprox accelerated_product(const LocalFactorFn& f);

/// Quad-precision value of a constant; cached per kind for the product part.
QuadApprox euler_constant_quad(ConstantKind kind, u64 param);

}  // namespace sqflab::detail
