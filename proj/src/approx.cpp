#include "sqflab/approx.hpp"

#include <iomanip>

namespace sqflab {

namespace {
Real ulp_of(Real v) { return std::fabs(v) * kRealEps; }
}  // namespace

ApproxReal& ApproxReal::operator+=(const ApproxReal& o) {
  value += o.value;
  abs_err += o.abs_err + ulp_of(value);
  return *this;
}

ApproxReal& ApproxReal::operator-=(const ApproxReal& o) {
  value -= o.value;
  abs_err += o.abs_err + ulp_of(value);
  return *this;
}

ApproxReal& ApproxReal::operator*=(const ApproxReal& o) {
  const Real err = std::fabs(value) * o.abs_err + std::fabs(o.value) * abs_err + abs_err * o.abs_err;
  value *= o.value;
  abs_err = err + ulp_of(value);
  return *this;
}

ApproxReal operator+(ApproxReal a, const ApproxReal& b) { return a += b; }
ApproxReal operator-(ApproxReal a, const ApproxReal& b) { return a -= b; }
ApproxReal operator*(ApproxReal a, const ApproxReal& b) { return a *= b; }

ApproxReal sqrt(const ApproxReal& a) {
  const Real v = std::sqrt(a.value);
  // |sqrt(x) - sqrt(y)| <= |x - y| / (sqrt(x) + sqrt(y)); fall back to sqrt(err).
  const Real lo = a.value - a.abs_err;
  Real err = (lo > 0) ? a.abs_err / (v + std::sqrt(lo)) : std::sqrt(a.abs_err);
  return {v, err + ulp_of(v)};
}

std::ostream& operator<<(std::ostream& os, const ApproxReal& a) {
  const auto flags = os.flags();
  os << std::setprecision(17) << a.value << " +/- " << std::setprecision(3) << a.abs_err;
  os.flags(flags);
  return os;
}

}  // namespace sqflab
