#pragma once

// Complete exponential sums: Kloosterman K, K2, quadratic Gauss sums and the
// character sums S1, S2 together with the full sum they factor.

#include <complex>
#include <vector>

#include "sqflab/arith.hpp"
#include "sqflab/verification.hpp"

namespace sqflab {

enum class ExpSumKind { K, K2, Gauss, S1, S2, Full };

struct ExpSumValue {
  double re = 0;
  double im = 0;
  u64 modulus = 1;
  ExpSumKind kind = ExpSumKind::K;

  std::complex<double> value() const { return {re, im}; }
  double abs() const { return std::abs(value()); }
};

/// e(k/M) for 0 <= k < M, each entry computed directly.
class UnitRoots {
 public:
  explicit UnitRoots(u64 M);
  u64 modulus() const { return M_; }
  const std::complex<double>& operator[](u64 k) const { return table_[k]; }
  const std::complex<double>& at(i64 k) const { return table_[mod_canonical(k, M_)]; }

 private:
  u64 M_;
  std::vector<std::complex<double>> table_;
};

/// sum over x coprime to q of e((a x + b xbar)/q). Requires q >= 2.
ExpSumValue kloosterman_K(i64 a, i64 b, u64 q);
/// sum over x coprime to q of e((a x + b xbar^2)/q). Requires q >= 2.
ExpSumValue k2_sum(i64 a, i64 b, u64 q);
/// sum_{h=1}^{p-1} (h/p) e(t h/p). Requires p an odd prime.
ExpSumValue gauss_sum(i64 t, u64 p);

/// S1(p, q, m2; b, c, d) = Gauss(-d qbar) * S2(p, q, m2; b, c, d).
/// Requires p an odd prime not dividing m2 q.
ExpSumValue s1_sum(u64 p, u64 q, i64 m2, i64 b, i64 c, i64 d);
/// The defining triple sum, O(p^3).
ExpSumValue s1_sum_literal(u64 p, u64 q, i64 m2, i64 b, i64 c, i64 d);

/// Sum over alpha, beta, gamma mod r^f with r^f | m2 alpha^2 beta - q gamma
/// of e((b alpha + c beta + d gamma)/r^f); gamma is solved from the
/// congruence. Requires r prime not dividing q.
ExpSumValue s2_sum(u64 r, unsigned f, u64 q, i64 m2, i64 b, i64 c, i64 d);

/// Sum over alpha, beta, gamma mod M = u p1 p2 with u | m2 alpha^2 beta - q gamma
/// of ((m2 alpha^2 beta - q gamma)/(p1 p2)) e((lambda alpha + mu beta + nu gamma)/M).
ExpSumValue full_sum_literal(u64 u, u64 p1, u64 p2, u64 q, i64 m2, i64 lambda, i64 mu, i64 nu);
/// The same sum assembled from S1 at p1, p2 and S2 at each r^f || u.
ExpSumValue full_sum_factored(u64 u, u64 p1, u64 p2, u64 q, i64 m2, i64 lambda, i64 mu, i64 nu);

/// Compares the two evaluations to 1e-6 relative. Requires distinct odd
/// primes p1, p2, gcd(u, p1 p2 q m2) = 1, p1 p2 not dividing q m2,
/// u <= 50 and p1 p2 <= 400.
VerificationRecord crt_factor_check(u64 u, u64 p1, u64 p2, u64 q, i64 m2, i64 lambda, i64 mu,
                                    i64 nu);

}  // namespace sqflab
