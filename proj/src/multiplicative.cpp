#include "sqflab/multiplicative.hpp"

#include <cmath>
#include <stdexcept>

#include "euler.hpp"

namespace sqflab {

namespace {

Rational kappa_pp(u64 p, unsigned a) {
  const i64 p2 = static_cast<i64>(p * p);
  const i64 P = static_cast<i64>(p);
  if (a == 0) return 1;
  if (a == 1) return Rational(p2 - P - 1, p2 - 1);
  if (a == 2) return Rational(p2 - P, p2 - 1);
  return 0;
}

Rational sq_ratio(u64 p) {  // (p^2 - 1)/(p^2 - 2)
  const i64 p2 = static_cast<i64>(p * p);
  return Rational(p2 - 1, p2 - 2);
}

u64 abs_u(i64 m) { return m < 0 ? static_cast<u64>(-(m + 1)) + 1 : static_cast<u64>(m); }

void require_mq(i64 m, u64 q) {
  if (m == 0) throw std::invalid_argument("m must be nonzero");
  if (q == 0) throw std::invalid_argument("q must be positive");
  if (!factorize(abs_u(m)).is_squarefree()) throw std::invalid_argument("m must be squarefree");
  if (gcd(abs_u(m), q) != 1) throw std::invalid_argument("gcd(m, q) must be 1");
}

}  // namespace

Rational kappa(u64 l) {
  if (l == 0) throw std::invalid_argument("kappa: argument must be positive");
  Rational r = 1;
  for (const auto& pp : factorize(l).factors) r *= kappa_pp(pp.prime, pp.exponent);
  return r;
}

Rational h_of(u64 d) {
  if (d == 0) throw std::invalid_argument("h: argument must be positive");
  const auto f = factorize(d);
  if (!f.is_squarefree()) return 0;
  Rational r = 1;
  for (const auto& pp : f.factors) {
    const i64 p2 = static_cast<i64>(pp.prime * pp.prime);
    r *= Rational(p2, p2 - 2);
  }
  return r;
}

Rational beta_of(u64 t) {
  if (t == 0) throw std::invalid_argument("beta: argument must be positive");
  Rational r = 1;
  for (const auto& pp : factorize(t).factors) {
    const i64 p2 = static_cast<i64>(pp.prime * pp.prime);
    if (pp.exponent == 1)
      r *= Rational(2, p2 - 2);
    else if (pp.exponent == 2)
      r *= Rational(-p2, p2 - 2);
    else
      return 0;
  }
  return r;
}

Rational f_q_ratio(i64 l, i64 m, u64 q) {
  if (l == 0) throw std::invalid_argument("f_q: l must be nonzero (use f_q_zero)");
  require_mq(m, q);
  const u64 ma = abs_u(m);
  const u64 la = abs_u(l);
  Rational r = 1;
  for (const auto& pp : factorize(ma).factors) r *= sq_ratio(pp.prime);
  for (const auto& pp : factorize(q).factors) {
    const i64 p2 = static_cast<i64>(pp.prime * pp.prime);
    r *= Rational(p2 - static_cast<i64>(pp.prime), p2 - 2);
  }
  for (const auto& pp : factorize(la).factors) {
    const u64 p = pp.prime;
    if (ma % p == 0) {
      r *= kappa_pp(p, std::min(pp.exponent, 2u));
    } else if (pp.exponent >= 2 && q % p != 0) {
      r *= sq_ratio(p);
    }
  }
  return r;
}

ApproxReal f_q_of(i64 l, i64 m, u64 q, Real eps) {
  const Rational ratio = f_q_ratio(l, m, q);
  const ApproxReal c2 = euler_constant(ConstantKind::C2, 1, eps);
  const Real r = static_cast<Real>(ratio);
  ApproxReal out = c2 * ApproxReal(r, std::fabs(r) * kRealEps);
  if (out.abs_err > eps) throw std::domain_error("f_q: requested accuracy not attainable");
  return out;
}

ApproxReal f_q_zero(i64 m, u64 q, Real eps) {
  require_mq(m, q);
  const u64 mq = abs_u(m) * q;
  const ApproxReal c = euler_constant(ConstantKind::C_of_q, mq, eps);
  const auto prof = multiplicative_profile(factorize(mq));
  const Real ratio = static_cast<Real>(prof.phi) / static_cast<Real>(mq);
  ApproxReal out = c * ApproxReal(ratio, ratio * kRealEps);
  if (out.abs_err > eps) throw std::domain_error("f_q_zero: requested accuracy not attainable");
  return out;
}

Rational fq_zero_local_literal(u64 p, i64 m, u64 q) {
  require_mq(m, q);
  const u64 ma = abs_u(m);
  const i64 p2 = static_cast<i64>(p * p);
  // (1 - 2/p^2) from C_2, then the factors of the defining product at p.
  Rational r(p2 - 2, p2);
  if (ma % p == 0) r *= sq_ratio(p);
  if (q % p == 0) r *= Rational(p2 - static_cast<i64>(p), p2 - 2);
  // kappa(gcd(0, m^2)) = kappa(m^2) and p^2 | 0 always.
  if (ma % p == 0) r *= kappa_pp(p, 2);
  if (ma % p != 0 && q % p != 0) r *= sq_ratio(p);
  return r;
}

Rational fq_zero_local_closed(u64 p, i64 m, u64 q) {
  require_mq(m, q);
  const u64 mq = abs_u(m) * q;
  const i64 P = static_cast<i64>(p);
  if (mq % p == 0) return Rational(P - 1, P);
  return Rational(P * P - 1, P * P);
}

FqSieve::FqSieve(i64 m, u64 q) : m_(m), q_(q) {
  require_mq(m, q);
  m_abs_ = abs_u(m);
  m_sq_ = m_abs_ * m_abs_;
  Rational base = 1;
  for (const auto& pp : factorize(m_abs_).factors) base *= sq_ratio(pp.prime);
  for (const auto& pp : factorize(q).factors) {
    const i64 p2 = static_cast<i64>(pp.prime * pp.prime);
    base *= Rational(p2 - static_cast<i64>(pp.prime), p2 - 2);
  }
  base_ = static_cast<Real>(base);
  kappa_by_residue_.resize(m_sq_);
  for (u64 a = 0; a < m_sq_; ++a) {
    const u64 g = gcd(a, m_sq_);  // gcd(0, m^2) = m^2
    kappa_by_residue_[a] = static_cast<Real>(kappa(g == 0 ? m_sq_ : g));
  }
  for (const auto& pp : factorize(m_abs_ * q).factors)
    mq_primes_.push_back(static_cast<std::uint32_t>(pp.prime));
}

void FqSieve::fill(u64 lo, u64 hi, std::vector<Real>& out) const {
  if (lo == 0 || hi < lo) throw std::invalid_argument("FqSieve: need 1 <= lo <= hi");
  const u64 n = hi - lo;
  out.assign(n, base_);
  for (u64 i = 0; i < n; ++i) out[i] *= kappa_by_residue_[(lo + i) % m_sq_];
  auto coprime_mq = [&](u64 p) {
    for (auto r : mq_primes_)
      if (r == p) return false;
    return true;
  };
  const u64 root = isqrt(hi == 0 ? 0 : hi - 1);
  auto sieve_prime = [&](u64 p) {
    if (!coprime_mq(p)) return;
    const u64 p2 = p * p;
    const Real f = static_cast<Real>(p2 - 1) / static_cast<Real>(p2 - 2);
    for (u64 l = (lo + p2 - 1) / p2 * p2; l < hi; l += p2) out[l - lo] *= f;
  };
  for (const auto p : small_primes()) {
    if (p > root) return;
    sieve_prime(p);
  }
  for (const auto p : primes_up_to(root)) {
    if (p > 1000000) sieve_prime(p);
  }
}

Real FqSieve::ratio(u64 l) const {
  std::vector<Real> v;
  fill(l, l + 1, v);
  return v[0];
}

Real gamma_an(i64 m) {
  if (m == 0) throw std::invalid_argument("gamma_an: m must be nonzero");
  const Real M = static_cast<Real>(m);
  if (m > 0) return (std::sqrt(M) + 1 - std::sqrt(M - 1)) / M;
  return (std::sqrt(1 - M) - std::sqrt(-M) - 1) / (-M);
}

Real gamma_ar(i64 m) {
  if (m == 0) throw std::invalid_argument("gamma_ar: m must be nonzero");
  const auto f = factorize(abs_u(m));
  if (!f.is_squarefree()) throw std::invalid_argument("gamma_ar: m must be squarefree");
  Real r = 1;
  for (const auto& pp : f.factors) {
    const Real p = static_cast<Real>(pp.prime);
    const Real s = std::sqrt(p);
    r /= 1 + (p + s + 1) / (p * s + s + 1);
  }
  return r;
}

}  // namespace sqflab
