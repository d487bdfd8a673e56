#include "sqflab/expsums.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace sqflab {

namespace {

u64 abs_u(i64 m) { return m < 0 ? static_cast<u64>(-(m + 1)) + 1 : static_cast<u64>(m); }

// Streaming pairwise summation: partial sums of 2^k terms merge like a
// binary counter.
class PairwiseSum {
 public:
  void add(const std::complex<double>& z) {
    std::complex<double> carry = z;
    std::size_t level = 0;
    for (std::size_t n = count_; n & 1; n >>= 1, ++level) {
      carry += stack_[level];
      stack_[level] = 0;
    }
    if (level >= stack_.size()) stack_.resize(level + 1, 0);
    stack_[level] = carry;
    ++count_;
  }
  std::complex<double> value() const {
    std::complex<double> s = 0;
    for (const auto& z : stack_) s += z;
    return s;
  }

 private:
  std::vector<std::complex<double>> stack_;
  std::size_t count_ = 0;
};

ExpSumValue make(const std::complex<double>& z, u64 M, ExpSumKind kind) {
  return {z.real(), z.imag(), M, kind};
}

void require_odd_prime(u64 p, const char* what) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument(std::string(what) + ": p must be an odd prime");
}

u64 ipow(u64 r, unsigned f) {
  u64 v = 1;
  for (unsigned i = 0; i < f; ++i) v *= r;
  return v;
}

}  // namespace

UnitRoots::UnitRoots(u64 M) : M_(M), table_(M) {
  if (M == 0) throw std::invalid_argument("UnitRoots: modulus must be positive");
  const long double two_pi = 6.283185307179586476925286766559005768L;
  for (u64 k = 0; k < M; ++k) {
    const long double t = two_pi * static_cast<long double>(k) / static_cast<long double>(M);
    table_[k] = {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
  }
}

ExpSumValue kloosterman_K(i64 a, i64 b, u64 q) {
  if (q <= 1) throw std::invalid_argument("kloosterman_K: q must be at least 2");
  const UnitRoots e(q);
  const u64 A = mod_canonical(a, q), B = mod_canonical(b, q);
  PairwiseSum s;
  for (u64 x = 1; x < q; ++x) {
    if (gcd(x, q) != 1) continue;
    const u64 xb = mod_inverse(static_cast<i64>(x), q);
    s.add(e[(mulmod(A, x, q) + mulmod(B, xb, q)) % q]);
  }
  return make(s.value(), q, ExpSumKind::K);
}

ExpSumValue k2_sum(i64 a, i64 b, u64 q) {
  if (q <= 1) throw std::invalid_argument("k2_sum: q must be at least 2");
  const UnitRoots e(q);
  const u64 A = mod_canonical(a, q), B = mod_canonical(b, q);
  PairwiseSum s;
  for (u64 x = 1; x < q; ++x) {
    if (gcd(x, q) != 1) continue;
    const u64 xb = mod_inverse(static_cast<i64>(x), q);
    s.add(e[(mulmod(A, x, q) + mulmod(B, mulmod(xb, xb, q), q)) % q]);
  }
  return make(s.value(), q, ExpSumKind::K2);
}

ExpSumValue gauss_sum(i64 t, u64 p) {
  require_odd_prime(p, "gauss_sum");
  const UnitRoots e(p);
  const u64 T = mod_canonical(t, p);
  PairwiseSum s;
  for (u64 h = 1; h < p; ++h) s.add(static_cast<double>(jacobi_symbol(static_cast<i64>(h), static_cast<i64>(p))) * e[mulmod(T, h, p)]);
  return make(s.value(), p, ExpSumKind::Gauss);
}

ExpSumValue s2_sum(u64 r, unsigned f, u64 q, i64 m2, i64 b, i64 c, i64 d) {
  if (f == 0) throw std::invalid_argument("s2_sum: exponent must be positive");
  if (!is_prime(r)) throw std::invalid_argument("s2_sum: r must be prime");
  if (q % r == 0) throw std::invalid_argument("s2_sum: r divides q");
  const u64 R = ipow(r, f);
  const UnitRoots e(R);
  const u64 qbar = mod_inverse(static_cast<i64>(q % R), R);
  const u64 M2 = mod_canonical(m2, R);
  const u64 B = mod_canonical(b, R), C = mod_canonical(c, R), D = mod_canonical(d, R);
  PairwiseSum s;
  for (u64 alpha = 0; alpha < R; ++alpha) {
    const u64 a2 = mulmod(mulmod(alpha, alpha, R), M2, R);
    const u64 ba = mulmod(B, alpha, R);
    for (u64 beta = 0; beta < R; ++beta) {
      const u64 gamma = mulmod(qbar, mulmod(a2, beta, R), R);
      s.add(e[(ba + mulmod(C, beta, R) + mulmod(D, gamma, R)) % R]);
    }
  }
  return make(s.value(), R, ExpSumKind::S2);
}

ExpSumValue s1_sum(u64 p, u64 q, i64 m2, i64 b, i64 c, i64 d) {
  require_odd_prime(p, "s1_sum");
  if (q % p == 0 || abs_u(m2) % p == 0) throw std::invalid_argument("s1_sum: p divides m2 q");
  const u64 qbar = mod_inverse(static_cast<i64>(q % p), p);
  const u64 t = mulmod(mod_canonical(-d, p), qbar, p);
  const auto g = gauss_sum(static_cast<i64>(t), p).value();
  const auto s2 = s2_sum(p, 1, q, m2, b, c, d).value();
  return make(g * s2, p, ExpSumKind::S1);
}

ExpSumValue s1_sum_literal(u64 p, u64 q, i64 m2, i64 b, i64 c, i64 d) {
  require_odd_prime(p, "s1_sum_literal");
  if (q % p == 0 || abs_u(m2) % p == 0) throw std::invalid_argument("s1_sum_literal: p divides m2 q");
  const UnitRoots e(p);
  std::vector<int> legendre(p);
  for (u64 h = 0; h < p; ++h) legendre[h] = jacobi_symbol(static_cast<i64>(h), static_cast<i64>(p));
  const u64 M2 = mod_canonical(m2, p), Q = q % p;
  const u64 B = mod_canonical(b, p), C = mod_canonical(c, p), D = mod_canonical(d, p);
  PairwiseSum s;
  for (u64 alpha = 0; alpha < p; ++alpha) {
    const u64 a2 = mulmod(mulmod(alpha, alpha, p), M2, p);
    for (u64 beta = 0; beta < p; ++beta) {
      const u64 x = mulmod(a2, beta, p);
      const u64 phase = (mulmod(B, alpha, p) + mulmod(C, beta, p)) % p;
      for (u64 gamma = 0; gamma < p; ++gamma) {
        const u64 arg = (x + p - mulmod(Q, gamma, p)) % p;
        const int chi = legendre[arg];
        if (chi == 0) continue;
        s.add(static_cast<double>(chi) * e[(phase + mulmod(D, gamma, p)) % p]);
      }
    }
  }
  return make(s.value(), p, ExpSumKind::S1);
}

namespace {

void require_full(u64 u, u64 p1, u64 p2, u64 q, i64 m2) {
  require_odd_prime(p1, "full sum");
  require_odd_prime(p2, "full sum");
  if (p1 == p2) throw std::invalid_argument("full sum: p1 and p2 must differ");
  if (u == 0) throw std::invalid_argument("full sum: u must be positive");
  if (m2 == 0) throw std::invalid_argument("full sum: m2 must be nonzero");
  const u64 qm = abs_u(m2);
  if (gcd(u, p1 * p2) != 1) throw std::invalid_argument("full sum: overlapping moduli");
  if (gcd(u, q) != 1 || gcd(u, qm) != 1) throw std::invalid_argument("full sum: gcd(u, q m2) must be 1");
  if (q % p1 == 0 || q % p2 == 0 || qm % p1 == 0 || qm % p2 == 0)
    throw std::invalid_argument("full sum: p1 p2 must not divide q m2");
}

}  // namespace

ExpSumValue full_sum_literal(u64 u, u64 p1, u64 p2, u64 q, i64 m2, i64 lambda, i64 mu, i64 nu) {
  require_full(u, p1, p2, q, m2);
  const u64 P = p1 * p2;
  const u64 M = u * P;
  const UnitRoots e(M);
  std::vector<int> chi(P);
  for (u64 h = 0; h < P; ++h) chi[h] = jacobi_symbol(static_cast<i64>(h), static_cast<i64>(P));
  const u64 M2 = mod_canonical(m2, M), Q = q % M;
  const u64 L = mod_canonical(lambda, M), Mu = mod_canonical(mu, M), N = mod_canonical(nu, M);
  // gamma = qbar m2 alpha^2 beta mod u, then every lift mod M.
  const u64 qbar_u = u == 1 ? 0 : mod_inverse(static_cast<i64>(q % u), u);
  PairwiseSum s;
  for (u64 alpha = 0; alpha < M; ++alpha) {
    const u64 a2 = mulmod(mulmod(alpha, alpha, M), M2, M);
    for (u64 beta = 0; beta < M; ++beta) {
      const u64 x = mulmod(a2, beta, M);
      const u64 phase = (mulmod(L, alpha, M) + mulmod(Mu, beta, M)) % M;
      const u64 g0 = u == 1 ? 0 : mulmod(qbar_u, x % u, u);
      for (u64 gamma = g0; gamma < M; gamma += u) {
        const u64 arg = (x + M - mulmod(Q, gamma, M)) % M;
        const int c = chi[arg % P];
        if (c == 0) continue;
        s.add(static_cast<double>(c) * e[(phase + mulmod(N, gamma, M)) % M]);
      }
    }
  }
  return make(s.value(), M, ExpSumKind::Full);
}

ExpSumValue full_sum_factored(u64 u, u64 p1, u64 p2, u64 q, i64 m2, i64 lambda, i64 mu, i64 nu) {
  require_full(u, p1, p2, q, m2);
  const u64 M = u * p1 * p2;
  // A residue x mod M splits as x = sum_i x_i N_i Nbar_i, N_i = M / M_i, so
  // lambda x / M = sum_i lambda Nbar_i x_i / M_i mod 1.
  auto component = [&](i64 coef, u64 Mi) {
    const u64 Ni = M / Mi;
    const u64 Nbar = mod_inverse(static_cast<i64>(Ni % Mi), Mi);
    return static_cast<i64>(mulmod(mod_canonical(coef, Mi), Nbar, Mi));
  };
  std::complex<double> prod = 1;
  for (const u64 p : {p1, p2})
    prod *= s1_sum(p, q, m2, component(lambda, p), component(mu, p), component(nu, p)).value();
  if (u > 1) {
    for (const auto& pp : factorize(u).factors) {
      const u64 R = ipow(pp.prime, pp.exponent);
      prod *= s2_sum(pp.prime, pp.exponent, q, m2, component(lambda, R), component(mu, R),
                     component(nu, R))
                  .value();
    }
  }
  return make(prod, M, ExpSumKind::Full);
}

VerificationRecord crt_factor_check(u64 u, u64 p1, u64 p2, u64 q, i64 m2, i64 lambda, i64 mu,
                                    i64 nu) {
  require_full(u, p1, p2, q, m2);
  if (u > 50 || p1 * p2 > 400) throw std::invalid_argument("crt_factor_check: moduli too large");
  const auto lit = full_sum_literal(u, p1, p2, q, m2, lambda, mu, nu).value();
  const auto fac = full_sum_factored(u, p1, p2, q, m2, lambda, mu, nu).value();
  const double diff = std::abs(lit - fac);
  const double scale = std::max({std::abs(lit), std::abs(fac), 1.0});
  return make_record("crt_factorization",
                     {{"u", std::to_string(u)},
                      {"p1", std::to_string(p1)},
                      {"p2", std::to_string(p2)},
                      {"q", std::to_string(q)},
                      {"m2", std::to_string(m2)},
                      {"lambda", std::to_string(lambda)},
                      {"mu", std::to_string(mu)},
                      {"nu", std::to_string(nu)}},
                     diff, 0, 1e-6L * scale);
}

}  // namespace sqflab
