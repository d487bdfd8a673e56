#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "sqflab/arith.hpp"

using namespace sqflab;

TEST_CASE("factorize small and composite inputs") {
  CHECK(factorize(1).factors.empty());
  const auto f12 = factorize(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == PrimePower{2, 2});
  CHECK(f12.factors[1] == PrimePower{3, 1});
  const auto f = factorize(9991);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 97);
  CHECK(f.factors[1].prime == 103);
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reassembles n for large inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const u64 n = rng() >> 1;
    const auto f = factorize(n);
    unsigned __int128 prod = 1;
    u64 last = 0;
    for (const auto& pp : f.factors) {
      CHECK(pp.prime > last);
      CHECK(is_prime(pp.prime));
      CHECK(pp.exponent >= 1);
      last = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    CHECK(static_cast<u64>(prod) == n);
  }
  // Semiprime with two large factors.
  const u64 p = 3037000493ULL, q = 3037000453ULL;
  const auto f = factorize(p * q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == q);
  CHECK(f.factors[1].prime == p);
}

TEST_CASE("multiplicative profile") {
  const auto a = multiplicative_profile(factorize(12));
  CHECK(a.mu == 0);
  CHECK(a.phi == 4);
  CHECK(a.d == 6);
  CHECK(a.omega == 2);
  CHECK(a.sigma_core == 2);
  CHECK(a.squarefree_kernel == 3);
  const auto one = multiplicative_profile(factorize(1));
  CHECK(one.mu == 1);
  CHECK(one.phi == 1);
  CHECK(one.d == 1);
  CHECK(one.omega == 0);
  CHECK(one.sigma_core == 1);
  CHECK(one.squarefree_kernel == 1);
  const auto t = multiplicative_profile(factorize(30));
  CHECK(t.mu == -1);
  CHECK(t.sigma_core == 1);
  CHECK(t.squarefree_kernel == 30);
}

TEST_CASE("profile is multiplicative on coprime pairs") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 500) {
    const u64 m = 1 + rng() % 5000, n = 1 + rng() % 5000;
    if (gcd(m, n) != 1) continue;
    const auto a = multiplicative_profile(factorize(m));
    const auto b = multiplicative_profile(factorize(n));
    const auto c = multiplicative_profile(factorize(m * n));
    CHECK(c.phi == a.phi * b.phi);
    CHECK(c.d == a.d * b.d);
    CHECK(c.mu == a.mu * b.mu);
    ++checked;
  }
}

TEST_CASE("sigma core and kernel divide n") {
  for (u64 n = 1; n <= 5000; ++n) {
    const auto p = multiplicative_profile(factorize(n));
    CHECK(n % p.sigma_core == 0);
    CHECK(n % p.squarefree_kernel == 0);
    CHECK((p.sigma_core == 1) == oracle::squarefree_trial(n));
  }
}

TEST_CASE("jacobi symbol") {
  CHECK(jacobi_symbol(1, 9) == 1);
  CHECK(jacobi_symbol(2, 3) == -1);
  CHECK_THROWS_AS(jacobi_symbol(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_symbol(1, -3), std::invalid_argument);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const i64 n = 2 * static_cast<i64>(rng() % 500) + 1;
    const i64 a = static_cast<i64>(rng() % 100000) - 50000;
    CHECK(jacobi_symbol(a + n, n) == jacobi_symbol(a, n));
  }
  // Legendre symbol at primes via Euler's criterion.
  for (const u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 101ULL}) {
    for (u64 a = 0; a < p; ++a) {
      const u64 e = powmod(a, (p - 1) / 2, p);
      const int expect = a == 0 ? 0 : (e == 1 ? 1 : -1);
      CHECK(jacobi_symbol(static_cast<i64>(a), static_cast<i64>(p)) == expect);
    }
  }
}

TEST_CASE("jacobi symbol is multiplicative in the modulus") {
  for (i64 n1 = 1; n1 <= 99; n1 += 2)
    for (i64 n2 = 1; n2 <= 99; n2 += 14) {
      for (i64 a = 0; a < n1 * n2; ++a)
        REQUIRE(jacobi_symbol(a, n1 * n2) == jacobi_symbol(a, n1) * jacobi_symbol(a, n2));
    }
}

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(1, 7) == 1);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(6, 7) == 6);
  CHECK(mod_inverse(-1, 10) == 9);
  CHECK_THROWS_AS(mod_inverse(4, 10), std::domain_error);
  for (u64 q = 2; q < 200; ++q)
    for (u64 x = 1; x < q; ++x)
      if (gcd(x, q) == 1) REQUIRE(mulmod(x, mod_inverse(static_cast<i64>(x), q), q) == 1);
}

TEST_CASE("squarefree window against trial division") {
  const auto w = squarefree_window(1, 11);
  std::vector<u64> got;
  w.for_each([&](u64 n) { got.push_back(n); });
  CHECK(got == std::vector<u64>{1, 2, 3, 5, 6, 7, 10});
  const auto w2 = squarefree_window(8, 10);
  CHECK(w2.count() == 0);
  const auto full = squarefree_window(0, 10001);
  for (u64 n = 0; n <= 10000; ++n) REQUIRE(full.is_squarefree(n) == (n > 0 && oracle::mobius_trial(n) != 0));
  CHECK_THROWS_AS(squarefree_window(5, 5), std::invalid_argument);
}

TEST_CASE("adjacent windows concatenate to the full sieve") {
  const u64 lo = 1000000, hi = 1000000 + 300000;
  const auto full = squarefree_window(lo, hi);
  const u64 cuts[] = {lo, lo + 1, lo + 77777, lo + 200000, hi};
  u64 total = 0;
  for (int i = 0; i + 1 < 5; ++i) {
    const auto part = squarefree_window(cuts[i], cuts[i + 1]);
    total += part.count();
    for (u64 n = cuts[i]; n < cuts[i + 1]; n += 97) REQUIRE(part.is_squarefree(n) == full.is_squarefree(n));
  }
  CHECK(total == full.count());
}

TEST_CASE("squarefree count to one million") {
  CHECK(squarefree_window(1, 1000001).count() == 607926);
  CHECK(oracle::squarefree_count_mobius(1000000) == 607926);
}

TEST_CASE("counts by residue") {
  CHECK(squarefree_counts_by_residue(10, 3) == std::vector<u64>{2, 3, 2});
  CHECK(squarefree_counts_by_residue(10, 1) == std::vector<u64>{7});
  CHECK_THROWS_AS(squarefree_counts_by_residue(10, 0), std::invalid_argument);
  CHECK_THROWS_AS(squarefree_counts_by_residue(10, 11), std::invalid_argument);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const u64 X = 1000 + rng() % 100000;
    const u64 q = 1 + rng() % 500;
    const auto counts = squarefree_counts_by_residue(X, q);
    u64 sum = 0;
    for (auto c : counts) sum += c;
    CHECK(sum == oracle::squarefree_count_mobius(X));
    // Window covering more than [1, X] gives the same counts.
    const auto w = squarefree_window(0, X + 1 + rng() % 1000);
    CHECK(squarefree_counts_by_residue(w, X, q) == counts);
  }
}
