#pragma once

// Multiplicative functions kappa, h, beta and f_q, the Euler-product
// constants with rigorous truncation bounds, and the exact product
// identities they satisfy.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "sqflab/approx.hpp"
#include "sqflab/arith.hpp"
#include "sqflab/verification.hpp"

namespace sqflab {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr Real kDefaultEps = 1e-12L;

/// kappa(p) = (p^2-p-1)/(p^2-1), kappa(p^2) = (p^2-p)/(p^2-1), 0 beyond.
Rational kappa(u64 l);
/// mu^2(d) prod_{p|d} (1 - 2/p^2)^{-1}.
Rational h_of(u64 d);
/// beta(p) = 2/(p^2-2), beta(p^2) = -p^2/(p^2-2), 0 beyond; h = 1 * beta.
Rational beta_of(u64 t);

/// Euler factor p -> N(1/p)/D(1/p) with integer coefficients and constant
/// term one. The tail exponent t is the order of vanishing of N - D.
class LocalFactorFn {
 public:
  LocalFactorFn(std::vector<i64> num, std::vector<i64> den);

  Rational exact(u64 p) const;
  Real operator()(u64 p) const;

  int tail_exponent() const { return t_; }
  /// c with |factor(p) - 1| <= c p^{-t} for every p >= p_min.
  Real tail_coefficient(u64 p_min = 2) const;

  const std::vector<i64>& numerator() const { return num_; }
  const std::vector<i64>& denominator() const { return den_; }

 private:
  std::vector<i64> num_;
  std::vector<i64> den_;
  int t_ = 0;
};

enum class ConstantKind { C, C2, Cprime, C_of_q, sum_h_d2, sum_h_d4, C_beta, hall_factor };

/// The infinite product part of a constant (kinds C, C2, Cprime, sum_h_d2,
/// sum_h_d4, C_beta). C and Cprime carry extra zeta(3/2)/pi factors.
LocalFactorFn local_factor(ConstantKind kind);

/// Value with abs_err <= eps. param is q or r where the kind takes one.
/// Throws std::invalid_argument for eps <= 0 or param == 0, and
/// std::domain_error when eps is below the attainable accuracy.
ApproxReal euler_constant(ConstantKind kind, u64 param = 1, Real eps = kDefaultEps);

/// prod_{p <= P} f(p) times a rigorous bound for the omitted tail
/// exp(c sum_{p>P} p^{-t}) - 1. Independent of the accelerated path.
ApproxReal truncated_euler_product(const LocalFactorFn& f, u64 prime_bound);

/// f_q(l, m) / C_2 exactly: the finite products of the f_q definition.
Rational f_q_ratio(i64 l, i64 m, u64 q);

/// f_q(l, m) for l != 0. Requires m squarefree and gcd(m, q) = 1.
ApproxReal f_q_of(i64 l, i64 m, u64 q, Real eps = kDefaultEps);

/// phi(|m|q)/(|m|q) C(|m|q), the l = 0 value.
ApproxReal f_q_zero(i64 m, u64 q, Real eps = kDefaultEps);

/// Per-prime factor of f_q at l = 0 from the defining product.
Rational fq_zero_local_literal(u64 p, i64 m, u64 q);
/// Per-prime factor of phi(mq)/(mq) C(mq).
Rational fq_zero_local_closed(u64 p, i64 m, u64 q);

/// f_q(l, m) / C_2 for l = lo, ..., hi - 1 (all nonzero), by sieving the
/// squares dividing l. Suited to long runs of l.
class FqSieve {
 public:
  FqSieve(i64 m, u64 q);

  /// out[i] = f_q(lo + i, m) / C_2.
  void fill(u64 lo, u64 hi, std::vector<Real>& out) const;
  Real ratio(u64 l) const;

 private:
  i64 m_;
  u64 q_;
  u64 m_abs_;
  u64 m_sq_;
  Real base_ = 1;
  std::vector<Real> kappa_by_residue_;  // kappa(gcd(l, m^2)) by l mod m^2
  std::vector<std::uint32_t> mq_primes_;
};

/// (sqrt(m) + 1 - sqrt(m-1))/m for m > 0, (sqrt(1-m) - sqrt(-m) - 1)/(-m)
/// for m < 0.
Real gamma_an(i64 m);
/// prod_{p|m} (1 + (p + sqrt p + 1)/(p^{3/2} + sqrt p + 1))^{-1}.
Real gamma_ar(i64 m);

/// Exact product identities, the square-divisor identity and the h-series
/// partial sums against their Euler products.
std::vector<VerificationRecord> identity_suite(u64 m_max, u64 r_max, u64 l_max = 10000);

}  // namespace sqflab
