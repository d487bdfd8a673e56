#include "sqflab/counters.hpp"

#include <cmath>
#include <stdexcept>

#include "euler.hpp"

namespace sqflab {

namespace {

u64 abs_u(i64 m) { return m < 0 ? static_cast<u64>(-(m + 1)) + 1 : static_cast<u64>(m); }

ResidueErrorVector finish_error_vector(std::vector<u64> counts, u64 X, u64 q, Real eps) {
  ResidueErrorVector ev;
  ev.X = X;
  ev.q = q;
  ev.counts = std::move(counts);
  const ApproxReal cq = euler_constant(ConstantKind::C_of_q, q, eps);
  ev.main_term = cq * ApproxReal(static_cast<Real>(X) / static_cast<Real>(q),
                                 static_cast<Real>(X) / static_cast<Real>(q) * kRealEps);
  ev.coprime.assign(q, 0);
  ev.errors.assign(q, 0);
  const auto primes = factorize(q).primes();
  // Mark the classes sharing a prime with q.
  std::vector<std::uint8_t> bad(q, 0);
  for (const u64 p : primes)
    for (u64 a = 0; a < q; a += p) bad[a] = 1;
  if (q == 1) bad[0] = 0;
  u64 phi = 0;
  for (u64 a = 0; a < q; ++a) {
    if (bad[a]) continue;
    ev.coprime[a] = 1;
    ev.errors[a] = static_cast<Real>(ev.counts[a]) - ev.main_term.value;
    ++phi;
  }
  ev.phi_q = phi;
  const Real top = static_cast<Real>(X) / static_cast<Real>(q) + 1;
  ev.error_bound = ev.main_term.abs_err + 2 * top * kRealEps;
  return ev;
}

}  // namespace

ResidueErrorVector error_vector(u64 X, u64 q, Real eps) {
  if (q == 0 || q > X) throw std::invalid_argument("error_vector: need 1 <= q <= X");
  return finish_error_vector(squarefree_counts_by_residue(X, q), X, q, eps);
}

ResidueErrorVector error_vector(const SieveWindow& window, u64 X, u64 q, Real eps) {
  if (q == 0 || q > X) throw std::invalid_argument("error_vector: need 1 <= q <= X");
  return finish_error_vector(squarefree_counts_by_residue(window, X, q), X, q, eps);
}

CorrelationResult correlation(const ResidueErrorVector& ev, i64 m) {
  if (m == 0) throw std::invalid_argument("correlation: m must be nonzero");
  if (gcd(abs_u(m), ev.q) != 1) throw std::invalid_argument("correlation: gcd(m, q) must be 1");
  const u64 q = ev.q;
  const u64 mq = mod_canonical(m, q);
  CompensatedSum<Real> m2;
  Real err = 0;
  unsigned __int128 S = 0;
  u64 Qq = 0;
  const Real e = ev.error_bound;
  u64 b = 0;  // m a mod q, advanced incrementally
  for (u64 a = 0; a < q; ++a, b = (b + mq >= q ? b + mq - q : b + mq)) {
    if (!ev.coprime[a]) continue;
    const Real ea = ev.errors[a];
    const Real eb = ev.errors[b];
    m2.add(ea * eb);
    err += (std::fabs(ea) + std::fabs(eb)) * e + e * e + std::fabs(ea * eb) * kRealEps;
    S += static_cast<unsigned __int128>(ev.counts[a]) * ev.counts[b];
    Qq += ev.counts[a];
  }
  if (S > static_cast<unsigned __int128>(~u64{0})) throw std::overflow_error("correlation: S overflows");

  CorrelationResult r;
  r.X = ev.X;
  r.q = q;
  r.m = m;
  r.S_exact = static_cast<u64>(S);
  r.coprime_squarefree = Qq;
  r.M2_exact = ApproxReal(m2.value(), err + m2.rounding_bound());

  const Real mt = ev.main_term.value;
  CompensatedSum<Real> rhs;
  rhs.add(static_cast<Real>(r.S_exact));
  rhs.add(-2 * mt * static_cast<Real>(Qq));
  rhs.add(static_cast<Real>(ev.phi_q) * mt * mt);
  const Real rhs_err = rhs.rounding_bound() +
                       (2 * mt * static_cast<Real>(Qq) + static_cast<Real>(ev.phi_q) * mt * mt) * 4 * kRealEps;
  r.reassembled = ApproxReal(rhs.value(), rhs_err);
  r.decomposition_residual =
      std::fabs(r.M2_exact.value - r.reassembled.value) / std::max<Real>(std::fabs(r.M2_exact.value), 1);
  return r;
}

CorrelationResult variance_M2(u64 X, u64 q, i64 m, Real eps) {
  if (m == 0 || gcd(abs_u(m), q) != 1) throw std::invalid_argument("variance_M2: need gcd(m, q) = 1");
  return correlation(error_vector(X, q, eps), m);
}

u64 double_sum_S(u64 X, u64 q, i64 m, Real eps) { return variance_M2(X, q, m, eps).S_exact; }

VerificationRecord dispersion_check(const ResidueErrorVector& ev, i64 m) {
  const auto r = correlation(ev, m);
  const Real scale = std::max<Real>(std::fabs(r.M2_exact.value), 1);
  return make_record("dispersion_identity",
                     {{"X", std::to_string(ev.X)}, {"q", std::to_string(ev.q)}, {"m", std::to_string(m)}},
                     r.M2_exact.value, r.reassembled.value, 1e-8L * scale);
}

VerificationRecord dispersion_check(u64 X, u64 q, i64 m, Real eps) {
  return dispersion_check(error_vector(X, q, eps), m);
}

ApproxReal croft_variance(const ResidueErrorVector& ev, Real eps) {
  const u64 q = ev.q;
  const auto fq = factorize(q);
  // 6/pi^2 prod_{p|q} (1 + 1/p)^{-1} X / q
  detail::QuadApprox base = detail::euler_constant_quad(ConstantKind::C_of_q, 1);
  for (const auto& pp : fq.factors) {
    const detail::Quad p = static_cast<detail::Quad>(pp.prime);
    base.value *= p / (p + 1);
    base.abs_err = base.abs_err * (p / (p + 1)) + detail::qabs(base.value) * 4 * detail::kQuadEps;
  }
  base.value *= static_cast<detail::Quad>(ev.X) / static_cast<detail::Quad>(q);
  base.abs_err *= static_cast<detail::Quad>(ev.X) / static_cast<detail::Quad>(q);
  const ApproxReal b = detail::to_approx(base);
  if (b.abs_err > eps * std::max<Real>(1, b.value))
    throw std::domain_error("croft_variance: requested accuracy not attainable");

  CompensatedSum<Real> sum;
  Real err = 0;
  for (u64 a = 0; a < q; ++a) {
    const u64 d = gcd(a, q);  // gcd(0, q) = q
    const u64 q0 = q / d;
    Real expected = 0;
    Real expected_err = 0;
    const auto pd = multiplicative_profile(factorize(d));
    if (pd.mu != 0) {
      const auto p0 = multiplicative_profile(factorize(q0));
      const Real f = static_cast<Real>(q0) / static_cast<Real>(p0.phi);
      expected = f * b.value;
      expected_err = f * b.abs_err + std::fabs(expected) * 2 * kRealEps;
    }
    const Real diff = static_cast<Real>(ev.counts[a]) - expected;
    sum.add(diff * diff);
    err += 2 * std::fabs(diff) * expected_err + expected_err * expected_err + diff * diff * kRealEps;
  }
  return {sum.value(), err + sum.rounding_bound()};
}

ApproxReal croft_variance(u64 X, u64 q, Real eps) { return croft_variance(error_vector(X, q, eps), eps); }

IntervalIL interval_I(i64 l, i64 m, u64 q, Real X) {
  if (m == 0) throw std::invalid_argument("interval_I: m must be nonzero");
  if (q == 0) throw std::invalid_argument("interval_I: q must be positive");
  if (!(X > 0)) throw std::invalid_argument("interval_I: X must be positive");
  IntervalIL I;
  I.l = l;
  I.m = m;
  I.q = q;
  I.X = X;
  const Real lq = static_cast<Real>(l) * static_cast<Real>(q);
  const Real M = static_cast<Real>(m);
  Real a, b;
  if (m > 0) {
    a = -lq / M;
    b = (X - lq) / M;
  } else {
    a = (X - lq) / M;
    b = -lq / M;
  }
  I.lo = std::max<Real>(0, a);
  I.hi = std::min<Real>(X, b);
  if (I.hi < I.lo) I.hi = I.lo;
  return I;
}

u64 u_p_local(u64 p, i64 l, i64 m, u64 q) {
  if (!is_prime(p)) throw std::invalid_argument("u_p_local: p must be prime");
  if (q % p == 0) throw std::invalid_argument("u_p_local: p divides q");
  if (m == 0) throw std::invalid_argument("u_p_local: m must be nonzero");
  const u64 la = abs_u(l);
  const bool p_m = abs_u(m) % p == 0;
  const bool p2_l = la % (p * p) == 0;
  const bool p_l = la % p == 0;
  if (p_m) {
    if (p2_l) return p;
    if (p_l) return p + 1;
    return 1;
  }
  return p2_l ? 1 : 2;
}

NdCount N_d_count(u64 d, i64 l, i64 m, u64 q, Real X) {
  const auto fd = factorize(d);
  if (!fd.is_squarefree()) throw std::invalid_argument("N_d_count: d must be squarefree");
  if (gcd(d, q) != 1) throw std::invalid_argument("N_d_count: gcd(d, q) must be 1");
  const IntervalIL I = interval_I(l, m, q, X);
  NdCount out;
  const auto dp = fd.primes();
  if (!I.empty()) {
    const i64 first = static_cast<i64>(std::floor(I.lo)) + 1;
    for (i64 n = first; static_cast<Real>(n) < I.hi; ++n) {
      if (gcd(static_cast<u64>(n), q) != 1) continue;
      const i64 k = m * n + l * static_cast<i64>(q);
      const u64 ka = abs_u(k);
      bool ok = true;
      for (const u64 p : dp) {
        const u64 p2 = p * p;
        if (static_cast<u64>(n) % p2 != 0 && ka % p2 != 0) {
          ok = false;
          break;
        }
      }
      if (ok) ++out.count;
    }
  }
  for (const u64 p : dp) out.U_d *= u_p_local(p, l, m, q);
  const auto pq = multiplicative_profile(factorize(q));
  const Real dd = static_cast<Real>(d);
  out.main_term = static_cast<Real>(pq.phi) / static_cast<Real>(q) * static_cast<Real>(out.U_d) *
                  I.length() / (dd * dd);
  out.residual = static_cast<Real>(out.count) - out.main_term;
  return out;
}

namespace {

// hist[r] += #{1 <= u <= U : c u = r mod q}, with c a unit mod q. Full
// periods add the same amount to every class; they go into `flat`.
void add_progression(std::vector<u64>& hist, u64& flat, u64 c, u64 U, u64 q) {
  flat += U / q;
  const u64 rest = U % q;
  u64 r = 0;
  for (u64 u = 1; u <= rest; ++u) {
    r += c;
    if (r >= q) r -= q;
    ++hist[r];
  }
}

}  // namespace

LatticeCount lattice_count_N(u64 J, u64 K, i64 m1, i64 m2, u64 X, u64 q) {
  if (J == 0 || K == 0 || q == 0) throw std::invalid_argument("lattice_count_N: J, K, q must be positive");
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("lattice_count_N: m1, m2 must be nonzero");
  if (gcd(abs_u(m1), q) != 1 || gcd(abs_u(m2), q) != 1)
    throw std::invalid_argument("lattice_count_N: gcd(m1 m2, q) must be 1");
  std::vector<u64> A(q, 0), B(q, 0);
  u64 flatA = 0, flatB = 0;
  auto build = [&](u64 lo, u64 hi, i64 mult, std::vector<u64>& hist, u64& flat) {
    for (u64 j = lo + 1; j <= hi; ++j) {
      if (gcd(j, q) != 1) continue;
      const u64 j2 = j * j;
      if (j2 >= X) break;
      const u64 U = (X - 1) / j2;  // 0 < j^2 u < X
      const u64 c = mulmod(mod_canonical(mult, q), j2 % q, q);
      add_progression(hist, flat, c, U, q);
    }
  };
  build(J, 2 * J, m1, A, flatA);
  build(K, 2 * K, m2, B, flatB);
  unsigned __int128 total = 0, sumA = 0, sumB = 0;
  for (u64 r = 0; r < q; ++r) {
    total += static_cast<unsigned __int128>(A[r]) * B[r];
    sumA += A[r];
    sumB += B[r];
  }
  // (A + flatA)(B + flatB) summed over r.
  total += static_cast<unsigned __int128>(flatA) * sumB + static_cast<unsigned __int128>(flatB) * sumA +
           static_cast<unsigned __int128>(flatA) * flatB * q;
  LatticeCount out;
  out.count = static_cast<u64>(total);
  const Real Xr = static_cast<Real>(X), Jr = static_cast<Real>(J), Kr = static_cast<Real>(K);
  out.reference = Xr / static_cast<Real>(q) * (Xr / (Jr * Kr) + Xr * Kr / (Jr * Jr));
  return out;
}

DivisorSum divisor_triple_sum(u64 K, u64 S, u64 X, u64 q, Real eta) {
  if (K == 0 || S == 0 || X == 0 || q == 0)
    throw std::invalid_argument("divisor_triple_sum: K, S, X, q must be positive");
  if (S > X / (K * K)) throw std::invalid_argument("divisor_triple_sum: need S <= X/K^2");
  DivisorSum out;
  const Real Xr = static_cast<Real>(X);
  const Real L = std::log(Xr);
  out.reference = Xr / static_cast<Real>(q) * (std::pow(Xr, 0.5L + eta) + Xr / static_cast<Real>(K) * L * L * L);
  const u64 lmax = X / q;
  if (lmax == 0) return out;
  const u64 kmax = 2 * K;
  const u64 nmax = kmax * kmax * S;
  std::vector<std::uint32_t> dcount(nmax + 1, 0);
  for (u64 a = 1; a <= nmax; ++a)
    for (u64 b = a; b <= nmax; b += a) ++dcount[b];
  u64 sum = 0;
  for (u64 k = K + 1; k <= kmax; ++k) {
    const u64 k2 = k * k;
    for (u64 v = 1; v <= S; ++v) {
      const u64 top = k2 * v;
      // l q <= top - 1
      const u64 lend = std::min(lmax, (top - 1) / q);
      for (u64 l = 1; l <= lend; ++l) sum += dcount[top - l * q];
    }
  }
  out.sum = sum;
  return out;
}

HooleyRow hooley_report(const ResidueErrorVector& ev) {
  HooleyRow row;
  for (u64 a = 0; a < ev.q; ++a)
    if (ev.coprime[a]) row.max_abs_error = std::max(row.max_abs_error, std::fabs(ev.errors[a]));
  const Real X = static_cast<Real>(ev.X), q = static_cast<Real>(ev.q);
  row.envelope = std::sqrt(X / q) + std::sqrt(q);
  row.ratio = row.max_abs_error / row.envelope;
  return row;
}

}  // namespace sqflab
