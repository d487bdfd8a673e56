#include "sqflab/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "euler.hpp"
#include "sqflab/counters.hpp"

namespace sqflab {

using detail::qabs;
using detail::Quad;
using detail::QuadApprox;
using detail::kQuadEps;

namespace {

u64 abs_u(i64 m) { return m < 0 ? static_cast<u64>(-(m + 1)) + 1 : static_cast<u64>(m); }

ApproxReal constant(ConstantKind kind, u64 param, Real eps) { return euler_constant(kind, param, eps); }

ApproxReal exact_real(Real v) { return {v, std::fabs(v) * kRealEps}; }

ApproxReal phi_over(u64 n) {
  const auto p = multiplicative_profile(factorize(n));
  return exact_real(static_cast<Real>(p.phi) / static_cast<Real>(n));
}

// Integral of (n + 1/2 - v) v^{-a} over [n + 1/2 + t0, n + 1/2 + t1],
// -1/2 <= t0 <= t1 <= 1/2.
QuadApprox unit_piece(u64 n, Quad t0, Quad t1, Quad a) {
  const Quad c = static_cast<Quad>(n) + Quad(0.5);
  if (n < 8) {
    auto F = [&](Quad v) {
      if (v == 0) return Quad(0);
      return c * powq(v, 1 - a) / (1 - a) - powq(v, 2 - a) / (2 - a);
    };
    const Quad v = F(c + t1) - F(c + t0);
    const Quad scale = c * powq(c + 1, 1 - a) / (1 - a) + powq(c + 1, 2 - a) / (2 - a);
    return {v, scale * 32 * kQuadEps};
  }
  // -(c^{-a}) sum_k binom(-a, k) c^{-k} (t1^{k+2} - t0^{k+2}) / (k+2)
  const Quad ca = powq(c, -a);
  Quad binom = 1;  // binom(-a, k)
  Quad ck = 1;     // c^{-k}
  Quad p0 = t0 * t0, p1 = t1 * t1;  // t^{k+2}
  Quad sum = 0, abs_sum = 0, last = 0;
  for (int k = 0; k < 200; ++k) {
    const Quad term = binom * ck * (p1 - p0) / (k + 2);
    sum += term;
    abs_sum += qabs(term);
    last = qabs(binom * ck) * (qabs(p1) + qabs(p0)) / (k + 2);
    if (k > 2 && last < 1e-40Q * (abs_sum + 1e-300Q)) break;
    binom *= (-a - k) / (k + 1);
    ck /= c;
    p0 *= t0;
    p1 *= t1;
  }
  // Successive terms shrink at least by 1/(2c) <= 1/17.
  return {-ca * sum, ca * (last * 2 + abs_sum * 16 * kQuadEps)};
}

// h(d) for d <= D in quad.
std::vector<Quad> h_table(u64 D) {
  std::vector<std::uint32_t> spf(D + 1, 0);
  for (u64 i = 2; i <= D; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= D; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  std::vector<Quad> h(D + 1, 0);
  if (D >= 1) h[1] = 1;
  for (u64 d = 2; d <= D; ++d) {
    const u64 p = spf[d];
    const u64 rest = d / p;
    if (rest % p == 0) continue;
    const Quad p2 = static_cast<Quad>(p) * static_cast<Quad>(p);
    h[d] = h[rest] * p2 / (p2 - 2);
  }
  return h;
}

u64 split_point(Real Y, std::optional<u64> D) {
  const u64 floor_root = static_cast<u64>(std::floor(std::sqrt(Y)));
  u64 d = D ? *D : static_cast<u64>(std::ceil(std::pow(Y, 2.0L / 3.0L)));
  return std::max<u64>({d, floor_root, 1});
}

Quad psi1_quad(Quad x) {
  const Quad f = x - floorq(x);
  return (f - f * f) / 2;
}

// Shared body of G_of and aux_G_unweighted.
ApproxReal sawtooth_series(Real Y, u64 r, Real eps, std::optional<u64> D, bool weighted) {
  if (!(Y > 0)) throw std::invalid_argument("G: Y must be positive");
  if (r == 0) throw std::invalid_argument("G: r must be positive");
  const u64 split = split_point(Y, D);
  const std::vector<Quad> h = weighted ? h_table(split) : std::vector<Quad>();
  const Quad Yq = static_cast<Quad>(Y);
  Quad head = 0, p2 = 0, p4 = 0, abs_head = 0;
  for (u64 d = 1; d <= split; ++d) {
    if (gcd(d, r) != 1) continue;
    const Quad w = weighted ? h[d] : Quad(1);
    if (w == 0) continue;
    const Quad dd = static_cast<Quad>(d) * static_cast<Quad>(d);
    const Quad t = w * psi1_quad(Yq / dd);
    head += t;
    abs_head += qabs(t);
    p2 += w / dd;
    p4 += w / (dd * dd);
  }
  QuadApprox H2, H4;
  if (weighted) {
    H2 = detail::euler_constant_quad(ConstantKind::sum_h_d2, r);
    H4 = detail::euler_constant_quad(ConstantKind::sum_h_d4, r);
  } else {
    const Quad pi2 = M_PIq * M_PIq;
    Quad z2 = pi2 / 6, z4 = pi2 * pi2 / 90;
    for (const auto& pp : factorize(r).factors) {
      const Quad p = static_cast<Quad>(pp.prime);
      z2 *= 1 - 1 / (p * p);
      z4 *= 1 - 1 / (p * p * p * p);
    }
    H2 = {z2, z2 * 64 * kQuadEps};
    H4 = {z4, z4 * 64 * kQuadEps};
  }
  const Quad n = static_cast<Quad>(split);
  const Quad tail = Yq / 2 * (H2.value - p2) - Yq * Yq / 2 * (H4.value - p4);
  const Quad err = abs_head * 8 * kQuadEps + n * 16 * kQuadEps * (1 + Yq + Yq * Yq) +
                   Yq / 2 * H2.abs_err + Yq * Yq / 2 * H4.abs_err +
                   qabs(tail) * 4 * kQuadEps;
  const ApproxReal out = detail::to_approx({head + tail, err});
  if (out.abs_err > eps) throw std::domain_error("G: requested accuracy not attainable");
  return out;
}

}  // namespace

Real psi(Real v) { return std::floor(v) - v + 0.5L; }

Real psi_antiderivative(Real x) {
  if (x < 0) throw std::invalid_argument("psi_antiderivative: x must be non-negative");
  const Real f = x - std::floor(x);
  return (f - f * f) / 2;
}

ApproxReal psi_mellin_integral(Real X, Real s) {
  if (!(s > 0 && s < 2)) throw std::invalid_argument("psi_mellin_integral: s must lie in (0, 2)");
  if (!(X > 1)) throw std::invalid_argument("psi_mellin_integral: X must exceed 1");
  const Quad a = static_cast<Quad>(s) / 2;
  const u64 N = static_cast<u64>(std::floor(X));
  Quad sum = 0, err = 0;
  // Sum small contributions first.
  const Quad Xq = static_cast<Quad>(X);
  const Quad frac = Xq - static_cast<Quad>(N);
  if (frac > 0) {
    const QuadApprox piece = unit_piece(N, Quad(-0.5), frac - Quad(0.5), a);
    sum += piece.value;
    err += piece.abs_err;
  }
  for (u64 n = N; n-- > 0;) {
    const QuadApprox piece = unit_piece(n, Quad(-0.5), Quad(0.5), a);
    sum += piece.value;
    err += piece.abs_err + qabs(sum) * kQuadEps;
  }
  return detail::to_approx({sum, err});
}

ApproxReal psi_mellin_limit(Real s) {
  if (!(s > 0 && s < 2)) throw std::invalid_argument("psi_mellin_limit: s must lie in (0, 2)");
  const Quad w = static_cast<Quad>(s) / 2 - 1;
  const QuadApprox z = detail::zeta_quad(w);
  return detail::to_approx({z.value / w, z.abs_err / qabs(w) + qabs(z.value / w) * kQuadEps});
}

ApproxReal G_of(Real Y, u64 r, Real eps, std::optional<u64> D) {
  return sawtooth_series(Y, r, eps, D, true);
}

ApproxReal aux_G_unweighted(Real Y, u64 r, Real eps, std::optional<u64> D) {
  return sawtooth_series(Y, r, eps, D, false);
}

ApproxReal G_main_term(Real Y, u64 r, Real eps) {
  if (r == 0) throw std::invalid_argument("G_main_term: r must be positive");
  ApproxReal v = constant(ConstantKind::Cprime, 1, eps);
  for (const auto& pp : factorize(r).factors) {
    const Real p = static_cast<Real>(pp.prime);
    v = v * exact_real((p * p - 2) / (p * p + p - 2));
  }
  return v * exact_real(std::sqrt(Y));
}

ApproxReal aux_G_main_term(Real Y, u64 r, Real) {
  if (r == 0) throw std::invalid_argument("aux_G_main_term: r must be positive");
  const QuadApprox z = detail::zeta_quad(Quad(1.5));
  const ApproxReal zz = detail::to_approx({z.value / (2 * M_PIq), z.abs_err / (2 * M_PIq) + z.value * kQuadEps});
  return zz * phi_over(r) * exact_real(std::sqrt(Y));
}

ApproxReal MainTermBreakdown::at(Real Y) const {
  return quadratic * exact_real(Y * Y) - linear * exact_real(Y) + half_power * exact_real(std::sqrt(Y)) +
         ApproxReal(remainder);
}

ApproxReal frakS_exact(Real Y, u64 q, i64 m, Real eps) {
  const FqSieve sieve(m, q);  // validates m and q
  if (!(Y >= 1)) return {0, 0};
  const u64 L = static_cast<u64>(std::floor(Y));
  CompensatedSum<Real> sum;
  std::vector<Real> block;
  const u64 step = u64{1} << 16;
  for (u64 lo = 1; lo <= L; lo += step) {
    const u64 hi = std::min(L + 1, lo + step);
    sieve.fill(lo, hi, block);
    for (u64 i = 0; i < hi - lo; ++i) sum.add(block[i] * (Y - static_cast<Real>(lo + i)));
  }
  const ApproxReal c2 = constant(ConstantKind::C2, 1, eps);
  const Real s = sum.value();
  return c2 * ApproxReal(s, s * 16 * kRealEps + sum.rounding_bound());
}

MainTermBreakdown frakS_formula(Real, u64 q, i64 m, Real eps, FrakSForm form) {
  if (m == 0) throw std::invalid_argument("frakS_formula: m must be nonzero");
  const u64 ma = abs_u(m);
  if (!factorize(ma).is_squarefree()) throw std::invalid_argument("frakS_formula: m must be squarefree");
  if (q == 0 || gcd(ma, q) != 1) throw std::invalid_argument("frakS_formula: need gcd(m, q) = 1");
  const ApproxReal cq = constant(ConstantKind::C_of_q, q, eps);
  const ApproxReal cmq = constant(ConstantKind::C_of_q, ma * q, eps);
  const ApproxReal half = exact_real(0.5L);
  MainTermBreakdown b;
  b.quadratic = half * phi_over(q) * cq * cq;
  b.linear = half * phi_over(ma * q) * cmq;
  b.half_power = half * constant(ConstantKind::C, 1, eps) * exact_real(gamma_ar(m)) *
                 constant(ConstantKind::hall_factor, q, eps);
  if (form != FrakSForm::corrected) {
    b.quadratic = b.quadratic * ApproxReal(2);
    b.linear = b.linear * ApproxReal(2);
  }
  if (form == FrakSForm::restated_plus) b.linear = -b.linear;
  return b;
}

ApproxReal A_exact(Real X, u64 q, i64 m, Real eps) {
  const FqSieve sieve(m, q);
  if (!(X >= static_cast<Real>(q))) throw std::invalid_argument("A_exact: need q <= X");
  const ApproxReal f0 = f_q_zero(m, q, eps);
  const Real Q = static_cast<Real>(q);
  const Real M = static_cast<Real>(m);
  const u64 L = static_cast<u64>(std::floor((static_cast<Real>(abs_u(m)) + 1) * X / Q));
  auto len = [&](Real lq) {
    Real a, b;
    if (m > 0) {
      a = -lq / M;
      b = (X - lq) / M;
    } else {
      a = (X - lq) / M;
      b = -lq / M;
    }
    const Real lo = std::max<Real>(0, a), hi = std::min(X, b);
    return hi > lo ? hi - lo : Real(0);
  };
  CompensatedSum<Real> sum;
  std::vector<Real> block;
  const u64 step = u64{1} << 16;
  for (u64 lo = 1; lo <= L; lo += step) {
    const u64 hi = std::min(L + 1, lo + step);
    sieve.fill(lo, hi, block);
    for (u64 i = 0; i < hi - lo; ++i) {
      const Real lq = static_cast<Real>(lo + i) * Q;
      const Real w = len(lq) + len(-lq);
      if (w != 0) sum.add(block[i] * w);
    }
  }
  const ApproxReal c2 = constant(ConstantKind::C2, 1, eps);
  const Real s = sum.value();
  return c2 * ApproxReal(s, s * 16 * kRealEps + sum.rounding_bound()) + f0 * exact_real(len(0));
}

ApproxReal A_decomposition(Real X, u64 q, i64 m, Real eps) {
  if (!(X >= static_cast<Real>(q))) throw std::invalid_argument("A_decomposition: need q <= X");
  const Real Q = static_cast<Real>(q);
  const Real M = static_cast<Real>(m);
  auto S = [&](Real Y) { return Y > 0 ? frakS_exact(Y, q, m, eps) : ApproxReal(0); };
  const ApproxReal factor = exact_real(Q / M);
  if (m > 0) {
    const ApproxReal f0 = f_q_zero(m, q, eps);
    return f0 * exact_real(X / M) + factor * (S(X / Q) - S((M - 1) * X / Q) + S(M * X / Q));
  }
  return factor * (S(X / Q) + S(-M * X / Q) - S((1 - M) * X / Q));
}

ApproxReal A_formula(Real X, u64 q, i64 m, Real eps) {
  if (!(X >= static_cast<Real>(q))) throw std::invalid_argument("A_formula: need q <= X");
  return theorem_main_terms(X, q, m, eps).S_main;
}

TheoremMainTerms theorem_main_terms(Real X, u64 q, i64 m, Real eps) {
  if (m == 0) throw std::invalid_argument("theorem_main_terms: m must be nonzero");
  const u64 ma = abs_u(m);
  if (!factorize(ma).is_squarefree()) throw std::invalid_argument("theorem_main_terms: m must be squarefree");
  if (q == 0 || gcd(ma, q) != 1) throw std::invalid_argument("theorem_main_terms: need gcd(m, q) = 1");
  if (!(X >= static_cast<Real>(q))) throw std::invalid_argument("theorem_main_terms: need q <= X");
  const Real Q = static_cast<Real>(q);
  const ApproxReal cq = constant(ConstantKind::C_of_q, q, eps);
  const ApproxReal lead_root = cq * exact_real(X / Q);
  const auto prof = multiplicative_profile(factorize(q));
  const ApproxReal lead = ApproxReal(static_cast<Real>(prof.phi)) * lead_root * lead_root;
  TheoremMainTerms t;
  t.M2_main = exact_real(0.5L) * constant(ConstantKind::C, 1, eps) * exact_real(gamma_an(m)) *
              exact_real(gamma_ar(m)) * constant(ConstantKind::hall_factor, q, eps) *
              exact_real(std::sqrt(X * Q));
  t.S_main = lead + t.M2_main;
  t.S_main_printed = exact_real(0.5L) * lead + t.M2_main;
  return t;
}

}  // namespace sqflab
