#include "euler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "sqflab/zeta.hpp"

namespace sqflab {

using detail::qabs;
using detail::Quad;
using detail::QuadApprox;

LocalFactorFn::LocalFactorFn(std::vector<i64> num, std::vector<i64> den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.empty() || den_.empty() || num_[0] != 1 || den_[0] != 1)
    throw std::invalid_argument("LocalFactorFn: constant terms must be 1");
  const std::size_t n = std::max(num_.size(), den_.size());
  num_.resize(n, 0);
  den_.resize(n, 0);
  for (std::size_t k = 1; k < n; ++k) {
    if (num_[k] != den_[k]) {
      t_ = static_cast<int>(k);
      break;
    }
  }
  if (t_ < 2) throw std::invalid_argument("LocalFactorFn: tail exponent must be at least 2");
}

Rational LocalFactorFn::exact(u64 p) const {
  Rational x(1, p);
  Rational n = 0, d = 0, xp = 1;
  for (std::size_t k = 0; k < num_.size(); ++k) {
    n += num_[k] * xp;
    d += den_[k] * xp;
    xp *= x;
  }
  return n / d;
}

Real LocalFactorFn::operator()(u64 p) const {
  const Real x = 1.0L / static_cast<Real>(p);
  Real n = 0, d = 0;
  for (std::size_t k = num_.size(); k-- > 0;) {
    n = n * x + static_cast<Real>(num_[k]);
    d = d * x + static_cast<Real>(den_[k]);
  }
  return n / d;
}

Real LocalFactorFn::tail_coefficient(u64 p_min) const {
  // |N - D| / |D| <= sum_{k>=t} |n_k - d_k| x^k / (1 - sum_{k>=1} |d_k| x^k).
  const Real x = 1.0L / static_cast<Real>(std::max<u64>(p_min, 2));
  Real top = 0, below = 0, xp = 1;
  for (std::size_t k = t_; k < num_.size(); ++k, xp *= x)
    top += std::fabs(static_cast<Real>(num_[k] - den_[k])) * xp;
  xp = x;
  for (std::size_t k = 1; k < den_.size(); ++k, xp *= x)
    below += std::fabs(static_cast<Real>(den_[k])) * xp;
  if (below >= 1) throw std::domain_error("LocalFactorFn: denominator may vanish at p_min");
  return top / (1 - below) * (1 + 16 * kRealEps);
}

LocalFactorFn local_factor(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::C:
      return LocalFactorFn({1, 0, -3, 2}, {1});
    case ConstantKind::C2:
      return LocalFactorFn({1, 0, -2}, {1});
    case ConstantKind::Cprime:
    case ConstantKind::C_beta:
      return LocalFactorFn({1, 0, -3, 2}, {1, 0, -2});
    case ConstantKind::sum_h_d2:
      return LocalFactorFn({1, 0, -1}, {1, 0, -2});
    case ConstantKind::sum_h_d4:
      return LocalFactorFn({1, 0, -2, 0, 1}, {1, 0, -2});
    default:
      throw std::invalid_argument("local_factor: kind has no infinite product");
  }
}

ApproxReal truncated_euler_product(const LocalFactorFn& f, u64 prime_bound) {
  if (prime_bound < 2) throw std::invalid_argument("truncated_euler_product: bound below 2");
  const auto primes = primes_up_to(prime_bound);
  Quad prod = 1;
  const auto& n = f.numerator();
  const auto& d = f.denominator();
  for (const auto p : primes) {
    const Quad x = 1 / static_cast<Quad>(p);
    Quad a = 0, b = 0;
    for (std::size_t k = n.size(); k-- > 0;) {
      a = a * x + static_cast<Quad>(n[k]);
      b = b * x + static_cast<Quad>(d[k]);
    }
    prod *= a / b;
  }
  const Quad rounding = prod * detail::kQuadEps * static_cast<Quad>(4 * n.size() + 4) *
                        static_cast<Quad>(primes.size());
  const int t = f.tail_exponent();
  const Real c = f.tail_coefficient(prime_bound + 1);
  const Real P = static_cast<Real>(prime_bound);
  const Real s = std::pow(P, static_cast<Real>(1 - t)) / static_cast<Real>(t - 1);
  const Real tail = std::expm1(c * s) * (1 + 16 * kRealEps);
  QuadApprox q{prod, qabs(rounding)};
  ApproxReal out = detail::to_approx(q);
  out.abs_err += std::fabs(out.value) * tail;
  return out;
}

namespace detail {
namespace {

constexpr int kAccelDegree = 6;
constexpr u64 kHeadBound = 100000;

using i128 = __int128;

std::vector<i128> series(const std::vector<i64>& num, const std::vector<i64>& den, int deg) {
  // N / D to degree deg; D has constant term 1 so the inverse is integral.
  std::vector<i128> inv(deg + 1, 0);
  inv[0] = 1;
  for (int k = 1; k <= deg; ++k) {
    i128 acc = 0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) acc -= den[j] * inv[k - j];
    inv[k] = acc;
  }
  std::vector<i128> out(deg + 1, 0);
  for (int k = 0; k <= deg; ++k)
    for (int j = 0; j <= k && j < static_cast<int>(num.size()); ++j) out[k] += num[j] * inv[k - j];
  return out;
}

// f = prod_k (1 - x^k)^{e_k} * (1 + O(x^{deg+1})).
std::vector<i64> witt_exponents(std::vector<i128> s, int deg) {
  std::vector<i64> e(deg + 1, 0);
  for (int k = 1; k <= deg; ++k) {
    const i128 c = s[k];
    e[k] = static_cast<i64>(-c);
    // s <- s / (1 - x^k)^{e_k} = s * (1 - x^k)^{c}
    if (c > 0) {
      for (i128 rep = 0; rep < c; ++rep)
        for (int n = deg; n >= k; --n) s[n] -= s[n - k];
    } else {
      for (i128 rep = 0; rep < -c; ++rep)
        for (int n = k; n <= deg; ++n) s[n] += s[n - k];
    }
  }
  return e;
}

Quad eval_factor(const LocalFactorFn& f, Quad x) {
  const auto& n = f.numerator();
  const auto& d = f.denominator();
  Quad a = 0, b = 0;
  for (std::size_t k = n.size(); k-- > 0;) {
    a = a * x + static_cast<Quad>(n[k]);
    b = b * x + static_cast<Quad>(d[k]);
  }
  return a / b;
}

Quad eval_reduced(const LocalFactorFn& f, const std::vector<i64>& e, u64 p) {
  const Quad x = 1 / static_cast<Quad>(p);
  Quad g = eval_factor(f, x);
  Quad xk = x;
  for (int k = 1; k < static_cast<int>(e.size()); ++k, xk *= x) {
    if (e[k] == 0) continue;
    g *= powq(1 - xk, static_cast<Quad>(-e[k]));
  }
  return g;
}

}  // namespace

QuadApprox accelerated_product(const LocalFactorFn& f) {
  const auto e = witt_exponents(series(f.numerator(), f.denominator(), kAccelDegree), kAccelDegree);
  if (e[1] != 0) throw std::domain_error("accelerated_product: product diverges");

  QuadApprox out{1, 0};
  for (int k = 2; k <= kAccelDegree; ++k) {
    if (e[k] == 0) continue;
    const QuadApprox z = zeta_quad(k);
    const Quad rel = z.abs_err / z.value;
    const Quad v = powq(z.value, static_cast<Quad>(-e[k]));
    const Quad ek = static_cast<Quad>(e[k] < 0 ? -e[k] : e[k]);
    out = out * QuadApprox{v, v * (expq(ek * rel * 2) - 1) + v * 8 * kQuadEps};
  }

  Quad head = 1;
  std::size_t count = 0;
  for (const auto p : small_primes()) {
    if (p > kHeadBound) break;
    head *= eval_reduced(f, e, p);
    ++count;
  }
  const Quad head_err = qabs(head) * kQuadEps * static_cast<Quad>(count) * (8 + 4 * kAccelDegree);
  out = out * QuadApprox{head, head_err};

  // Tail coefficient for g: twice the largest observed p^{deg+1}|g(p) - 1|
  // on primes where that quantity is well above rounding level.
  const int t = kAccelDegree + 1;
  Quad c = 0;
  for (const auto p : small_primes()) {
    if (p < 50) continue;
    if (p > 2000) break;
    const Quad g = eval_reduced(f, e, p);
    c = std::max(c, qabs(g - 1) * powq(static_cast<Quad>(p), t));
  }
  c = 2 * c + 1;
  const Quad P = kHeadBound;
  const Quad tail = expm1q(c * powq(P, 1 - t) / (t - 1));
  out.abs_err += qabs(out.value) * tail * 2;
  return out;
}

namespace {

struct Cached {
  std::once_flag once;
  QuadApprox value;
};

QuadApprox cached_product(ConstantKind kind) {
  static std::array<Cached, 8> cache;
  auto& slot = cache[static_cast<std::size_t>(kind)];
  std::call_once(slot.once, [&] { slot.value = accelerated_product(local_factor(kind)); });
  return slot.value;
}

QuadApprox zeta_three_halves_over_pi() {
  static std::once_flag once;
  static QuadApprox v;
  std::call_once(once, [] {
    const QuadApprox z = zeta_quad(static_cast<Quad>(3) / 2);
    v = z / QuadApprox{M_PIq, M_PIq * kQuadEps};
  });
  return v;
}

// prod_{p | r} 1 / f(p), in quad.
QuadApprox remove_local(const LocalFactorFn& f, u64 r) {
  Quad v = 1;
  int n = 0;
  for (const auto& pp : factorize(r).factors) {
    v /= eval_factor(f, 1 / static_cast<Quad>(pp.prime));
    ++n;
  }
  return {v, qabs(v) * kQuadEps * (16 + 16 * n)};
}

}  // namespace

QuadApprox euler_constant_quad(ConstantKind kind, u64 param) {
  if (param == 0) throw std::invalid_argument("euler_constant: parameter must be positive");
  switch (kind) {
    case ConstantKind::C:
      return zeta_three_halves_over_pi() * cached_product(kind);
    case ConstantKind::C2:
      return cached_product(kind);
    case ConstantKind::Cprime: {
      QuadApprox v = zeta_three_halves_over_pi() * cached_product(kind);
      v.value /= 2;
      v.abs_err /= 2;
      return v;
    }
    case ConstantKind::C_of_q: {
      const Quad pi2 = M_PIq * M_PIq;
      Quad v = 6 / pi2;
      int n = 0;
      for (const auto& pp : factorize(param).factors) {
        const Quad p2 = static_cast<Quad>(pp.prime) * static_cast<Quad>(pp.prime);
        v *= p2 / (p2 - 1);
        ++n;
      }
      return {v, qabs(v) * kQuadEps * (8 + 4 * n)};
    }
    case ConstantKind::sum_h_d2:
    case ConstantKind::sum_h_d4:
    case ConstantKind::C_beta:
      return cached_product(kind) * remove_local(local_factor(kind), param);
    case ConstantKind::hall_factor: {
      Quad v = 1;
      int n = 0;
      for (const auto& pp : factorize(param).factors) {
        const Quad p = static_cast<Quad>(pp.prime);
        v *= p / (p + 2);
        ++n;
      }
      return {v, qabs(v) * kQuadEps * (4 + 4 * n)};
    }
  }
  throw std::invalid_argument("euler_constant: unknown kind");
}

}  // namespace detail

ApproxReal euler_constant(ConstantKind kind, u64 param, Real eps) {
  if (!(eps > 0)) throw std::invalid_argument("euler_constant: eps must be positive");
  const ApproxReal v = detail::to_approx(detail::euler_constant_quad(kind, param));
  if (v.abs_err > eps) throw std::domain_error("euler_constant: requested accuracy not attainable");
  return v;
}

}  // namespace sqflab
