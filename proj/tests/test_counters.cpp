#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sqflab/counters.hpp"
#include "sqflab/zeta.hpp"

using namespace sqflab;

namespace {

Real six_over_pi2() {
  const Real pi = pi_real();
  return 6 / (pi * pi);
}

bool squarefree_abs(i64 m) {
  const u64 a = static_cast<u64>(m < 0 ? -m : m);
  return factorize(a).is_squarefree();
}

}  // namespace

TEST_CASE("error vector examples") {
  const auto ev = error_vector(10, 3);
  CHECK(ev.counts == std::vector<u64>{2, 3, 2});
  CHECK(ev.phi_q == 2);
  CHECK(ev.error(1).value == doctest::Approx(3 - six_over_pi2() * 9 / 8 * 10 / 3).epsilon(1e-12));
  CHECK(ev.error(1).value == doctest::Approx(0.7203).epsilon(1e-4));
  CHECK(ev.error(0).value == 0);
  const auto e1 = error_vector(10, 1);
  CHECK(e1.error(0).value == doctest::Approx(7 - 60 / (pi_real() * pi_real())).epsilon(1e-14));
  CHECK(e1.error_bound <= 1e-12L);
  CHECK_THROWS_AS(error_vector(10, 11), std::invalid_argument);
  CHECK_THROWS_AS(error_vector(10, 0), std::invalid_argument);
}

TEST_CASE("errors summed over coprime classes") {
  for (const u64 q : {1ULL, 7ULL, 12ULL, 97ULL, 100ULL}) {
    const u64 X = 20000;
    const auto ev = error_vector(X, q);
    Real sum = 0;
    u64 coprime_count = 0;
    for (u64 a = 0; a < q; ++a)
      if (ev.coprime[a]) {
        sum += ev.errors[a];
        coprime_count += ev.counts[a];
      }
    const Real expect = static_cast<Real>(coprime_count) - static_cast<Real>(ev.phi_q) * ev.main_term.value;
    CHECK(std::fabs(sum - expect) <= static_cast<Real>(ev.phi_q) * (ev.error_bound + ev.main_term.abs_err) + 1e-9L);
  }
}

TEST_CASE("variance and correlation examples") {
  const auto r1 = variance_M2(10, 1, 1);
  const auto ev1 = error_vector(10, 1);
  CHECK(r1.M2_exact.value == doctest::Approx(ev1.errors[0] * ev1.errors[0]).epsilon(1e-14));
  const auto r3 = variance_M2(10, 3, 1);
  const auto ev3 = error_vector(10, 3);
  CHECK(r3.M2_exact.value ==
        doctest::Approx(ev3.errors[1] * ev3.errors[1] + ev3.errors[2] * ev3.errors[2]).epsilon(1e-14));
  CHECK(r3.S_exact == 13);
  CHECK(double_sum_S(10, 3, 1) == 13);
  CHECK(double_sum_S(10, 3, 2) == 12);
  CHECK(double_sum_S(10000, 1, 1) == 6083ULL * 6083ULL);
  CHECK_THROWS_AS(variance_M2(100, 6, 2), std::invalid_argument);
}

TEST_CASE("correlation is invariant under m -> inverse of m") {
  for (const u64 q : {7ULL, 97ULL, 100ULL})
    for (const i64 m : {2, 3, -1, -7}) {
      if (gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
      const auto ev = error_vector(50000, q);
      const i64 mbar = static_cast<i64>(mod_inverse(m, q));
      const auto a = correlation(ev, m);
      const auto b = correlation(ev, mbar);
      CHECK(std::fabs(a.M2_exact.value - b.M2_exact.value) <=
            a.M2_exact.abs_err + b.M2_exact.abs_err + 1e-9L * std::fabs(a.M2_exact.value));
      CHECK(a.S_exact == b.S_exact);
    }
}

TEST_CASE("dispersion identity") {
  CHECK(dispersion_check(1000, 7, 1).pass);
  CHECK(dispersion_check(1000, 7, 3).pass);
  std::mt19937_64 rng(19);
  for (int i = 0; i < 40; ++i) {
    const u64 X = 100 + rng() % 200000;
    const u64 q = 1 + rng() % std::min<u64>(X, 2000);
    i64 m = static_cast<i64>(rng() % 21) - 10;
    if (m == 0 || gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
    const auto rec = dispersion_check(X, q, m);
    INFO("X=" << X << " q=" << q << " m=" << m);
    CHECK(rec.pass);
    CHECK(std::fabs(rec.lhs - rec.rhs) <= 1e-8L * std::max<Real>(std::fabs(rec.lhs), 1));
  }
}

TEST_CASE("double sum against pair enumeration") {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 20) {
    const u64 X = 200 + rng() % 1801;
    const u64 q = 1 + rng() % 60;
    const i64 m = static_cast<i64>(rng() % 13) - 6;
    if (m == 0 || gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
    INFO("X=" << X << " q=" << q << " m=" << m);
    CHECK(double_sum_S(X, q, m) == oracle::double_sum_pairs(X, q, m));
    ++done;
  }
}

TEST_CASE("Croft variance at q = 1") {
  for (const u64 X : {10ULL, 1000ULL, 100000ULL}) {
    const Real Q = static_cast<Real>(oracle::squarefree_count_mobius(X));
    const Real diff = Q - six_over_pi2() * static_cast<Real>(X);
    const auto v = croft_variance(X, 1);
    CHECK(std::fabs(v.value - diff * diff) <= v.abs_err + 1e-12L * diff * diff + 1e-15L);
  }
  CHECK(croft_variance(100000, 30).value >= 0);
}

TEST_CASE("interval I(l)") {
  const auto a = interval_I(0, 1, 5, 100);
  CHECK(a.lo == 0);
  CHECK(a.hi == 100);
  const auto b = interval_I(1, 2, 3, 10);
  CHECK(b.lo == 0);
  CHECK(b.hi == doctest::Approx(3.5));
  CHECK(b.length() == doctest::Approx(3.5));
  CHECK(interval_I(23, 1, 1, 10).empty());
  CHECK(interval_I(-31, -2, 1, 10).empty());
  // Membership matches the definition for random integer points.
  std::mt19937_64 rng(29);
  for (int i = 0; i < 2000; ++i) {
    const i64 m = static_cast<i64>(rng() % 11) - 5;
    if (m == 0) continue;
    const u64 q = 1 + rng() % 20;
    const Real X = 50 + static_cast<Real>(rng() % 200);
    const i64 l = static_cast<i64>(rng() % 81) - 40;
    const auto I = interval_I(l, m, q, X);
    for (i64 n = -5; n < 260; ++n) {
      const Real other = static_cast<Real>(m * n + l * static_cast<i64>(q));
      const bool expect = n > 0 && n < X && other > 0 && other < X;
      REQUIRE(I.contains(static_cast<Real>(n)) == expect);
    }
  }
}

TEST_CASE("u_p local table against brute force") {
  std::vector<i64> ms;
  for (i64 m = -30; m <= 30; ++m)
    if (m != 0 && squarefree_abs(m)) ms.push_back(m);
  for (const auto p : primes_up_to(31))
    for (const u64 q : {1ULL, 2ULL, 3ULL, 35ULL})
      for (const i64 m : ms) {
        if (q % p == 0) continue;
        for (i64 l = -200; l <= 200; ++l)
          REQUIRE(u_p_local(p, l, m, q) == oracle::u_p_brute(p, l, m, q));
      }
  CHECK(u_p_local(3, 9, 3, 1) == 3);
  CHECK(u_p_local(3, 9, 1, 1) == 1);
  CHECK(u_p_local(3, 2, 1, 1) == 2);
  CHECK_THROWS_AS(u_p_local(3, 1, 1, 6), std::invalid_argument);
}

TEST_CASE("N_d counts") {
  const auto c = N_d_count(2, 0, 1, 3, 10);
  CHECK(c.count == 2);
  const auto d1 = N_d_count(1, 3, 2, 5, 100);
  const auto I = interval_I(3, 2, 5, 100);
  u64 expect = 0;
  for (i64 n = 1; n < 100; ++n)
    if (I.contains(static_cast<Real>(n)) && gcd(static_cast<u64>(n), 5) == 1) ++expect;
  CHECK(d1.count == expect);
  // Main term tracks the count for larger X.
  const auto big = N_d_count(6, 5, 1, 7, 200000);
  CHECK(std::fabs(big.residual) < 0.01L * big.main_term);
}

TEST_CASE("lattice count") {
  CHECK(lattice_count_N(1, 1, 1, 1, 10, 3).count == 2);
  // q = 1 factorises.
  const u64 J = 2, K = 3, X = 400;
  u64 su = 0, sv = 0;
  for (u64 j = J + 1; j <= 2 * J; ++j) su += (X - 1) / (j * j);
  for (u64 k = K + 1; k <= 2 * K; ++k) sv += (X - 1) / (k * k);
  CHECK(lattice_count_N(J, K, 1, 1, X, 1).count == su * sv);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const u64 X = 20 + rng() % 481;
    const u64 q = 1 + rng() % 30;
    const u64 Jv = 1 + rng() % 5, Kv = 1 + rng() % 5;
    const i64 m1 = static_cast<i64>(rng() % 7) - 3, m2 = static_cast<i64>(rng() % 7) - 3;
    if (m1 == 0 || m2 == 0 || gcd(static_cast<u64>(std::abs(m1 * m2)), q) != 1) continue;
    INFO("J=" << Jv << " K=" << Kv << " m1=" << m1 << " m2=" << m2 << " X=" << X << " q=" << q);
    CHECK(lattice_count_N(Jv, Kv, m1, m2, X, q).count == oracle::lattice_count_brute(Jv, Kv, m1, m2, X, q));
  }
}

TEST_CASE("divisor triple sum") {
  CHECK(divisor_triple_sum(1, 2, 10, 5).sum == 2);
  CHECK(divisor_triple_sum(1, 2, 10, 11).sum == 0);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 30; ++i) {
    const u64 X = 50 + rng() % 2000;
    const u64 q = 1 + rng() % 40;
    const u64 K = 1 + rng() % 4;
    const u64 Smax = X / (K * K);
    if (Smax == 0) continue;
    const u64 S = 1 + rng() % Smax;
    CHECK(divisor_triple_sum(K, S, X, q).sum == oracle::divisor_triple_brute(K, S, X, q));
  }
  // Monotone in S.
  u64 prev = 0;
  for (u64 S = 1; S <= 20; ++S) {
    const u64 v = divisor_triple_sum(2, S, 1000, 7).sum;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("Hooley report is finite") {
  const auto ev = error_vector(100000, 101);
  const auto row = hooley_report(ev);
  CHECK(row.envelope > 0);
  CHECK(std::isfinite(row.ratio));
  CHECK(row.max_abs_error >= 0);
}
