#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace sqflab {

using Real = long double;

/// A real value with a rigorous absolute error bound. Arithmetic propagates
/// worst-case bounds and adds one rounding unit of the result.
struct ApproxReal {
  Real value = 0;
  Real abs_err = 0;

  constexpr ApproxReal() = default;
  constexpr ApproxReal(Real v, Real err = 0) : value(v), abs_err(err) {}

  bool contains(Real x) const { return std::fabs(x - value) <= abs_err; }
  Real lower() const { return value - abs_err; }
  Real upper() const { return value + abs_err; }

  ApproxReal operator-() const { return {-value, abs_err}; }
  ApproxReal& operator+=(const ApproxReal& o);
  ApproxReal& operator-=(const ApproxReal& o);
  ApproxReal& operator*=(const ApproxReal& o);
};

ApproxReal operator+(ApproxReal a, const ApproxReal& b);
ApproxReal operator-(ApproxReal a, const ApproxReal& b);
ApproxReal operator*(ApproxReal a, const ApproxReal& b);
ApproxReal sqrt(const ApproxReal& a);

std::ostream& operator<<(std::ostream& os, const ApproxReal& a);

/// Unit roundoff of Real.
inline constexpr Real kRealEps = std::numeric_limits<Real>::epsilon();

/// Neumaier (improved Kahan) summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_sum_ += std::fabs(x);
    ++n_;
  }
  T value() const { return sum_ + comp_; }
  /// Bound on the summation rounding error (Neumaier: 2u|sum| + O(n u^2)).
  T rounding_bound() const {
    const T u = std::numeric_limits<T>::epsilon();
    return 2 * u * std::fabs(value()) + static_cast<T>(n_) * u * u * abs_sum_ * 4;
  }

 private:
  T sum_ = 0;
  T comp_ = 0;
  T abs_sum_ = 0;
  unsigned long long n_ = 0;
};

}  // namespace sqflab
