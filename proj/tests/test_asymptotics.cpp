#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sqflab/asymptotics.hpp"
#include "sqflab/zeta.hpp"

using namespace sqflab;

TEST_CASE("sawtooth and its antiderivative") {
  CHECK(psi(0.25L) == doctest::Approx(0.25));
  CHECK(psi(1.0L) == doctest::Approx(0.5));
  CHECK(psi(-0.25L) == doctest::Approx(-0.25));
  CHECK(psi_antiderivative(0.5L) == doctest::Approx(0.125));
  CHECK(psi_antiderivative(3) == doctest::Approx(0).epsilon(1e-18));
  CHECK_THROWS_AS(psi_antiderivative(-1), std::invalid_argument);
}

TEST_CASE("antiderivative differentiates to the sawtooth") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(0, 1000);
  const Real h = 1e-6L;
  int tested = 0;
  while (tested < 2000) {
    const Real x = U(rng);
    const Real frac = x - std::floor(x);
    if (frac < 2 * h || frac > 1 - 2 * h) continue;
    const Real fd = (psi_antiderivative(x + h) - psi_antiderivative(x)) / h;
    REQUIRE(std::fabs(fd - psi(x)) <= h);
    ++tested;
  }
}

TEST_CASE("sawtooth Mellin integral") {
  const Real expect = -2 * zeta(-0.5L).value;
  CHECK(expect == doctest::Approx(0.4157726).epsilon(1e-6));
  CHECK(std::fabs(psi_mellin_limit(1).value - expect) < 1e-17L);
  const auto v = psi_mellin_integral(10000, 1);
  CHECK(std::fabs(v.value - expect) <= 0.01L);
  for (const Real s : {0.5L, 1.0L, 1.5L}) {
    Real prev = 1e9;
    for (const Real X : {100.0L, 10000.0L, 1000000.0L}) {
      const auto I = psi_mellin_integral(X, s);
      const auto L = psi_mellin_limit(s);
      const Real diff = std::fabs(I.value - L.value);
      CHECK(diff <= 0.25L * std::pow(X, -s / 2) + I.abs_err + L.abs_err);
      CHECK(diff <= prev);
      prev = diff;
    }
  }
  CHECK_THROWS_AS(psi_mellin_integral(0.5L, 1), std::invalid_argument);
  CHECK_THROWS_AS(psi_mellin_integral(10, 2), std::invalid_argument);
}

TEST_CASE("G is independent of the split point") {
  for (const u64 r : {1ULL, 2ULL, 6ULL, 35ULL})
    for (const Real Y : {50.0L, 1000.0L, 100000.0L}) {
      const auto a = G_of(Y, r, 1e-9L);
      const auto b = G_of(Y, r, 1e-9L, static_cast<u64>(4 * std::sqrt(Y)) + 7);
      CHECK(std::fabs(a.value - b.value) <= a.abs_err + b.abs_err);
      const auto c = aux_G_unweighted(Y, r, 1e-9L);
      const auto d = aux_G_unweighted(Y, r, 1e-9L, static_cast<u64>(3 * std::sqrt(Y)) + 1);
      CHECK(std::fabs(c.value - d.value) <= c.abs_err + d.abs_err);
    }
  CHECK(std::fabs(G_of(1e-9L, 1).value) <= 1e-8L);
}

TEST_CASE("unweighted G for small Y and the main term") {
  const Real Y = 0.7L;
  for (const u64 r : {1ULL, 6ULL}) {
    Real expect = 0;
    for (u64 d = 1; d < 2000000; ++d) {
      if (gcd(d, r) != 1) continue;
      const Real dd = static_cast<Real>(d) * static_cast<Real>(d);
      expect += Y / (2 * dd) - Y * Y / (2 * dd * dd);
    }
    const auto v = aux_G_unweighted(Y, r);
    CHECK(std::fabs(v.value - expect) <= 1e-6L);
  }
  // Direct summation with the tail d > D replaced by its two-term expansion.
  for (const u64 r : {1ULL, 10ULL}) {
    const Real Yb = 10000;
    const u64 D = 4000000;
    Real direct = 0;
    for (u64 d = 1; d <= D; ++d)
      if (gcd(d, r) == 1) direct += psi_antiderivative(Yb / (static_cast<Real>(d) * static_cast<Real>(d)));
    const Real density = static_cast<Real>(multiplicative_profile(factorize(r)).phi) / static_cast<Real>(r);
    direct += density * Yb / (2 * static_cast<Real>(D));
    const auto g = aux_G_unweighted(Yb, r);
    CHECK(std::fabs(g.value - direct) <= 1e-6L);
    CHECK(std::fabs(g.value - aux_G_main_term(Yb, r).value) <= std::cbrt(Yb));
  }
  const Real ratio = aux_G_main_term(1e6L, 2).value / aux_G_main_term(1e6L, 1).value;
  CHECK(std::fabs(ratio - 0.5L) < 0.05L);
}

TEST_CASE("frakS exact values") {
  const Real c2 = euler_constant(ConstantKind::C2).value;
  CHECK(frakS_exact(0.5L, 1, 1).value == 0);
  CHECK(frakS_exact(2, 1, 1).value == doctest::Approx(c2).epsilon(1e-15));
  CHECK(frakS_exact(5, 1, 1).value == doctest::Approx(c2 * 10.5L).epsilon(1e-15));
  for (const u64 q : {1ULL, 5ULL, 12ULL})
    for (const i64 m : {1, 2, 3, -1, -5}) {
      if (gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
      for (const Real Y : {3.5L, 77.25L, 600.0L}) {
        const auto v = frakS_exact(Y, q, m);
        const Real o = oracle::frakS_rational(Y, q, m);
        CHECK(std::fabs(v.value - o) <= v.abs_err + 1e-12L * std::fabs(o));
      }
    }
}

TEST_CASE("frakS is piecewise linear between integers") {
  for (const Real base : {10.0L, 123.0L}) {
    const Real a = frakS_exact(base + 0.1L, 5, 2).value;
    const Real b = frakS_exact(base + 0.5L, 5, 2).value;
    const Real c = frakS_exact(base + 0.9L, 5, 2).value;
    CHECK(std::fabs((b - a) / 0.4L - (c - b) / 0.4L) < 1e-9L);
  }
}

TEST_CASE("frakS formula coefficients at m = 1, q = 1") {
  const Real s = 6 / (pi_real() * pi_real());
  const auto f = frakS_formula(100, 1, 1);
  CHECK(f.quadratic.value == doctest::Approx(s * s / 2).epsilon(1e-14));
  CHECK(f.linear.value == doctest::Approx(s / 2).epsilon(1e-14));
  CHECK(f.half_power.value == doctest::Approx(euler_constant(ConstantKind::C).value / 2).epsilon(1e-14));
  const auto p = frakS_formula(100, 1, 1, kDefaultEps, FrakSForm::printed);
  CHECK(p.quadratic.value == doctest::Approx(s * s).epsilon(1e-14));
  CHECK(p.linear.value == doctest::Approx(s).epsilon(1e-14));
}

TEST_CASE("A exact against the rational oracle and the decomposition") {
  for (const u64 q : {1ULL, 5ULL, 12ULL})
    for (const i64 m : {1, 2, 3, -1, -2}) {
      if (gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
      for (const Real X : {200.0L, 1500.0L}) {
        const auto a = A_exact(X, q, m);
        const Real o = oracle::A_rational(X, q, m);
        CHECK(std::fabs(a.value - o) <= a.abs_err + 1e-12L * std::fabs(o));
        const auto d = A_decomposition(X, q, m);
        CHECK(std::fabs(a.value - d.value) <= 1e-9L * std::fabs(a.value));
      }
    }
  CHECK_THROWS_AS(A_exact(10, 11, 1), std::invalid_argument);
}

TEST_CASE("main terms") {
  const Real s = 6 / (pi_real() * pi_real());
  const Real C = euler_constant(ConstantKind::C).value;
  const auto a = A_formula(1e4L, 1, 1);
  CHECK(a.value == doctest::Approx(s * s * 1e8L + C * 100).epsilon(1e-14));
  const auto t = theorem_main_terms(1e6L, 7, 1);
  CHECK(t.M2_main.value == doctest::Approx(C * (7.0L / 9) * std::sqrt(7e6L)).epsilon(1e-14));
  CHECK(theorem_main_terms(1e6L, 7, -1).M2_main.value < 0);
  for (const u64 q : {1ULL, 5ULL, 12ULL})
    for (const i64 m : {1, 2, 3}) {
      if (gcd(static_cast<u64>(m), q) != 1) continue;
      Real prevA = -1e300L, prevS = -1e300L, prevG = -1e300L;
      for (Real X = 1000; X <= 1e7L; X *= 3.7L) {
        const Real av = A_formula(X, q, m).value;
        const Real sv = theorem_main_terms(X, q, m).S_main.value;
        const Real gv = G_main_term(X, static_cast<u64>(m) * q).value;
        CHECK(av > prevA);
        CHECK(sv > prevS);
        CHECK(gv > prevG);
        prevA = av;
        prevS = sv;
        prevG = gv;
      }
    }
}
