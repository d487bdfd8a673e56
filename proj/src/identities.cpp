#include <cmath>
#include <string>

#include "sqflab/multiplicative.hpp"

namespace sqflab {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& pp : f.factors) {
    const std::size_t n = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

int mobius(u64 n) { return multiplicative_profile(factorize(n)).mu; }

VerificationRecord exact_record(std::string id, Params params, const Rational& lhs,
                                const Rational& rhs) {
  auto r = make_record(std::move(id), std::move(params), static_cast<Real>(lhs),
                       static_cast<Real>(rhs), 0);
  r.pass = (lhs == rhs);
  return r;
}

// h(d)/d^k for d <= D from a smallest-prime-factor table.
std::vector<Real> h_over_power(u64 D, int k) {
  std::vector<std::uint32_t> spf(D + 1, 0);
  for (u64 i = 2; i <= D; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= D; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  std::vector<Real> h(D + 1, 0);
  h[1] = 1;
  for (u64 d = 2; d <= D; ++d) {
    const u64 p = spf[d];
    const u64 rest = d / p;
    if (rest % p == 0) {
      h[d] = 0;
    } else {
      const Real p2 = static_cast<Real>(p) * static_cast<Real>(p);
      h[d] = h[rest] * p2 / (p2 - 2);
    }
  }
  for (u64 d = 1; d <= D; ++d) h[d] /= std::pow(static_cast<Real>(d), static_cast<Real>(k));
  return h;
}

}  // namespace

std::vector<VerificationRecord> identity_suite(u64 m_max, u64 r_max, u64 l_max) {
  std::vector<VerificationRecord> out;

  // Divisor sums over rho sigma | m^2 against their products.
  for (u64 m = 1; m <= m_max; ++m) {
    const auto fm = factorize(m);
    if (!fm.is_squarefree()) continue;
    const auto m2 = factorize(m * m);
    Rational s1 = 0, s2 = 0;
    Real s3 = 0;
    for (const u64 rho : divisors(m2)) {
      const Rational k = kappa(rho);
      for (const u64 sigma : divisors(factorize(m * m / rho))) {
        const int mu = mobius(sigma);
        if (mu == 0) continue;
        s1 += k * mu / Rational(rho * sigma);
        s2 += k * mu;
        s3 += static_cast<Real>(k) * mu * std::sqrt(static_cast<Real>(rho * sigma));
      }
    }
    Rational p1 = 1, p2 = 1;
    Real p3 = 1;
    for (const auto& pp : fm.factors) {
      const i64 p = static_cast<i64>(pp.prime);
      p1 *= Rational(p * p - 1, p * p);
      p2 *= Rational(p * p - p, p * p - 1);
      const Real P = static_cast<Real>(p);
      p3 *= (P * P - P * std::sqrt(P) + P - 1) / (P * P - 1);
    }
    const Params params{{"m", std::to_string(m)}};
    out.push_back(exact_record("products.kappa_mu_inverse", params, s1, p1));
    out.push_back(exact_record("products.kappa_mu", params, s2, p2));
    out.push_back(make_record("products.kappa_mu_sqrt", params, s3, p3,
                              1e-12L * std::max<Real>(1, std::fabs(p3))));
  }

  // sum_{d^2 | l, (d, r) = 1} h(d)/d^2 = prod_{p^2 | l, p not dividing r} (p^2-1)/(p^2-2)
  // for l and -l.
  std::vector<u64> rs;
  for (u64 r = 1; r <= std::min<u64>(r_max, 12); ++r) rs.push_back(r);
  for (u64 r : {30ULL, 210ULL}) rs.push_back(r);
  for (const u64 r : rs) {
    u64 mismatches = 0;
    for (u64 l = 1; l <= l_max; ++l) {
      const auto fl = factorize(l);
      Rational lhs = 0;
      for (const u64 d : divisors(fl)) {
        const u64 d2 = d * d;
        if (d2 > l || l % d2 != 0 || gcd(d, r) != 1) continue;
        const Rational h = h_of(d);
        if (h != 0) lhs += h / Rational(d2);
      }
      Rational rhs = 1;
      for (const auto& pp : fl.factors)
        if (pp.exponent >= 2 && r % pp.prime != 0) {
          const i64 p2 = static_cast<i64>(pp.prime * pp.prime);
          rhs *= Rational(p2 - 1, p2 - 2);
        }
      // The identity depends on l only through |l|; both signs share the
      // same divisor set.
      if (lhs != rhs) mismatches += 2;
    }
    out.push_back(make_record("square_divisor_sum", {{"r", std::to_string(r)},
                                                     {"l_max", std::to_string(l_max)}},
                              static_cast<Real>(mismatches), 0, 0));
  }

  // Partial sums of h(d)/d^2 and h(d)/d^4 over (d, r) = 1 against the
  // products; the omitted tails are positive and at most
  // (1/C_2) sum_{d>D} d^{-k}.
  const u64 D = 20000;
  const auto h2 = h_over_power(D, 2);
  const auto h4 = h_over_power(D, 4);
  const Real inv_c2 = 1 / euler_constant(ConstantKind::C2).lower();
  const Real Dr = static_cast<Real>(D);
  const Real tail2 = inv_c2 / Dr;
  const Real tail4 = inv_c2 / (3 * Dr * Dr * Dr);
  for (u64 r = 1; r <= r_max; ++r) {
    CompensatedSum<Real> a, b;
    for (u64 d = 1; d <= D; ++d) {
      if (gcd(d, r) != 1) continue;
      a.add(h2[d]);
      b.add(h4[d]);
    }
    const ApproxReal e2 = euler_constant(ConstantKind::sum_h_d2, r);
    const ApproxReal e4 = euler_constant(ConstantKind::sum_h_d4, r);
    const Params params{{"r", std::to_string(r)}, {"D", std::to_string(D)}};
    // The partial sum lies in [product - tail, product].
    const Real slack2 = e2.abs_err + a.rounding_bound() + D * kRealEps;
    const Real slack4 = e4.abs_err + b.rounding_bound() + D * kRealEps;
    out.push_back(make_record("products.h_over_d2", params, a.value(),
                              e2.value - tail2 / 2, tail2 / 2 + slack2));
    out.push_back(make_record("products.h_over_d4", params, b.value(),
                              e4.value - tail4 / 2, tail4 / 2 + slack4));
  }
  return out;
}

}  // namespace sqflab
