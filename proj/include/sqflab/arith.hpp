#pragma once

// Exact integer arithmetic: factorization, multiplicative basics, Jacobi
// symbols, modular inverses and the segmented squarefree sieve.

#include <cstdint>
#include <span>
#include <vector>

namespace sqflab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime-power decomposition. `factors` is sorted by prime,
/// each exponent is at least one, and n == 1 has no factors.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  bool is_squarefree() const;
  bool divides_by(u64 p) const;
  unsigned valuation(u64 p) const;
  std::vector<u64> primes() const;
};

struct MultiplicativeProfile {
  int mu = 1;
  u64 phi = 1;
  u64 d = 1;
  u64 omega = 0;
  u64 sigma_core = 1;         // product of p with p^2 | n
  u64 squarefree_kernel = 1;  // u-dagger: product of p with p || n
};

/// Primes below 10^6, built once.
std::span<const std::uint32_t> small_primes();

/// All primes p <= limit (simple sieve; limit up to a few 10^7).
std::vector<std::uint32_t> primes_up_to(u64 limit);

bool is_prime(u64 n);

/// Throws std::invalid_argument for n == 0 or n > 2^63.
Factorization factorize(u64 n);

MultiplicativeProfile multiplicative_profile(const Factorization& f);

u64 gcd(u64 a, u64 b);
u64 isqrt(u64 n);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

/// Reduce any signed value into [0, q).
u64 mod_canonical(i64 a, u64 q);

/// Jacobi symbol (a/n). Throws std::invalid_argument unless n is odd and
/// positive.
int jacobi_symbol(i64 a, i64 n);

/// Inverse of x modulo q in [1, q-1] (0 when q == 1). Throws
/// std::domain_error when gcd(x, q) > 1.
u64 mod_inverse(i64 x, u64 q);

/// Squarefree indicator over [lo, hi): bit i set iff lo + i is squarefree.
/// Zero is never squarefree.
class SieveWindow {
 public:
  SieveWindow(u64 lo, u64 hi, std::vector<u64> words);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  u64 size() const { return hi_ - lo_; }

  bool is_squarefree(u64 n) const;
  u64 count() const;
  /// Squarefree count in [lo, min(hi, x + 1)).
  u64 count_up_to(u64 x) const;

  std::span<const u64> words() const { return words_; }

  /// Calls fn(n) for every squarefree n in the window, in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      u64 bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        fn(lo_ + 64 * w + static_cast<u64>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  u64 lo_;
  u64 hi_;
  std::vector<u64> words_;
};

/// Throws std::invalid_argument for hi <= lo or hi > 2^63.
SieveWindow squarefree_window(u64 lo, u64 hi);

/// counts[a] = #{n <= X squarefree : n = a mod q}. Requires 1 <= q <= X.
std::vector<u64> squarefree_counts_by_residue(u64 X, u64 q);

/// Same counts taken from a window that covers [1, X].
std::vector<u64> squarefree_counts_by_residue(const SieveWindow& window, u64 X, u64 q);

}  // namespace sqflab
