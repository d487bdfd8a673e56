#pragma once

// Exact enumerative quantities: residue-class error terms, variance and
// correlation sums, the double sum S[m], local counts and the lattice and
// divisor sums.

#include <vector>

#include "sqflab/approx.hpp"
#include "sqflab/arith.hpp"
#include "sqflab/multiplicative.hpp"
#include "sqflab/verification.hpp"

namespace sqflab {

/// Squarefree counts by residue mod q with the error terms
/// E(X, q, a) = count(a) - C(q) X / q on the classes coprime to q.
struct ResidueErrorVector {
  u64 X = 0;
  u64 q = 0;
  std::vector<u64> counts;         // every residue 0..q-1
  ApproxReal main_term;            // C(q) X / q
  std::vector<std::uint8_t> coprime;  // coprime[a] != 0 iff gcd(a, q) = 1
  std::vector<Real> errors;        // E(X, q, a) where coprime, 0 elsewhere
  Real error_bound = 0;            // shared abs_err of every E(X, q, a)
  u64 phi_q = 0;

  ApproxReal error(u64 a) const { return {errors.at(a), error_bound}; }
};

/// Requires 1 <= q <= X.
ResidueErrorVector error_vector(u64 X, u64 q, Real eps = kDefaultEps);
/// Same, reading counts from a window that covers [1, X].
ResidueErrorVector error_vector(const SieveWindow& window, u64 X, u64 q, Real eps = kDefaultEps);

struct CorrelationResult {
  u64 X = 0;
  u64 q = 0;
  i64 m = 0;
  u64 S_exact = 0;
  ApproxReal M2_exact;
  ApproxReal reassembled;       // S - 2 C(q)(X/q) Q_q + phi(q) (C(q) X/q)^2
  Real decomposition_residual = 0;  // |direct - reassembled| / max(|M2|, 1)
  u64 coprime_squarefree = 0;   // Q_q: squarefree n <= X coprime to q
};

/// sum over coprime a of E(X,q,a) E(X,q,ma), with S[m] and the dispersion
/// identity evaluated from the same counts. Requires gcd(m, q) = 1.
CorrelationResult correlation(const ResidueErrorVector& ev, i64 m);

CorrelationResult variance_M2(u64 X, u64 q, i64 m, Real eps = kDefaultEps);

/// #{(n1, n2): n1, n2 <= X squarefree, gcd(n1 n2, q) = 1, m n1 = n2 mod q}.
u64 double_sum_S(u64 X, u64 q, i64 m, Real eps = kDefaultEps);

VerificationRecord dispersion_check(u64 X, u64 q, i64 m, Real eps = kDefaultEps);
VerificationRecord dispersion_check(const ResidueErrorVector& ev, i64 m);

/// Sum over all residues a of (count(a) - expected(a))^2, where the expected
/// value is mu^2(d) (q0/phi(q0)) (6/pi^2) prod_{p|q} (1 + 1/p)^{-1} X/q
/// with d = gcd(a, q), q0 = q/d.
ApproxReal croft_variance(u64 X, u64 q, Real eps = kDefaultEps);
ApproxReal croft_variance(const ResidueErrorVector& ev, Real eps = kDefaultEps);

/// {n : n and m n + l q in (0, X)} as an open interval (lo, hi).
struct IntervalIL {
  i64 l = 0;
  i64 m = 1;
  u64 q = 1;
  Real X = 0;
  Real lo = 0;
  Real hi = 0;

  Real length() const { return hi - lo; }
  bool empty() const { return !(hi > lo); }
  bool contains(Real n) const { return n > lo && n < hi; }
};

IntervalIL interval_I(i64 l, i64 m, u64 q, Real X);

/// #{v mod p^2 : p^2 | v or p^2 | m v + l q} from the five-case table.
/// Requires p prime and p not dividing q.
u64 u_p_local(u64 p, i64 l, i64 m, u64 q);

struct NdCount {
  u64 count = 0;
  u64 U_d = 1;
  Real main_term = 0;  // (phi(q)/q) U_d |I(l)| / d^2
  Real residual = 0;   // count - main_term
};

/// #{n in I(l) : gcd(n, q) = 1, d | sigma(n) sigma(m n + l q)} by direct
/// enumeration. Requires d squarefree and gcd(d, q) = 1.
NdCount N_d_count(u64 d, i64 l, i64 m, u64 q, Real X);

struct LatticeCount {
  u64 count = 0;
  Real reference = 0;  // (X/q)(X/(JK) + X K / J^2), report only
};

/// #{(j,k,u,v): J<j<=2J, K<k<=2K, gcd(jk,q)=1, 0<j^2 u<X, 0<k^2 v<X,
///   m1 j^2 u = m2 k^2 v mod q}.
LatticeCount lattice_count_N(u64 J, u64 K, i64 m1, i64 m2, u64 X, u64 q);

struct DivisorSum {
  u64 sum = 0;
  Real reference = 0;  // (X/q)(X^{1/2+eta} + X K^{-1} log^3 X), report only
};

/// sum over K<k<=2K, l<=X/q, v<=S with k^2 v - l q >= 1 of d(k^2 v - l q).
/// Requires S <= X/K^2.
DivisorSum divisor_triple_sum(u64 K, u64 S, u64 X, u64 q, Real eta = 0.01L);

struct HooleyRow {
  Real max_abs_error = 0;
  Real envelope = 0;  // (X/q)^{1/2} + q^{1/2}
  Real ratio = 0;
};

HooleyRow hooley_report(const ResidueErrorVector& ev);

}  // namespace sqflab
