#include "sqflab/arith.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sqflab {

namespace {

constexpr u64 kMaxInput = u64{1} << 63;
constexpr u64 kSmallPrimeLimit = 1'000'000;
constexpr u64 kSegmentBits = u64{1} << 20;

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n is odd, composite and has no factor
// below 10^6.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 g = pollard_brent(n);
  split_large(g, out);
  split_large(n / g, out);
}

}  // namespace

bool Factorization::is_squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool Factorization::divides_by(u64 p) const { return valuation(p) > 0; }

unsigned Factorization::valuation(u64 p) const {
  for (const auto& pp : factors)
    if (pp.prime == p) return pp.exponent;
  return 0;
}

std::vector<u64> Factorization::primes() const {
  std::vector<u64> out;
  out.reserve(factors.size());
  for (const auto& pp : factors) out.push_back(pp.prime);
  return out;
}

std::vector<std::uint32_t> primes_up_to(u64 limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (u64 k = p * p; k <= limit; k += p) composite[k] = true;
  }
  return out;
}

std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(kSmallPrimeLimit);
  return table;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

u64 mod_canonical(i64 a, u64 q) {
  if (q == 0) throw std::invalid_argument("mod_canonical: zero modulus");
  if (a >= 0) return static_cast<u64>(a) % q;
  // -(a+1) avoids overflow at INT64_MIN.
  const u64 r = static_cast<u64>(-(a + 1)) % q;
  return q - 1 - r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > kMaxInput) throw std::invalid_argument("factorize: n exceeds 2^63");
  Factorization f;
  f.n = n;
  u64 rest = n;
  for (std::uint32_t p : small_primes()) {
    if (u64{p} * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (rest == 1) return f;
  if (rest < kSmallPrimeLimit * kSmallPrimeLimit) {
    f.factors.push_back({rest, 1});
    return f;
  }
  std::vector<u64> big;
  split_large(rest, big);
  std::sort(big.begin(), big.end());
  for (u64 p : big) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

MultiplicativeProfile multiplicative_profile(const Factorization& f) {
  MultiplicativeProfile mp;
  for (const auto& [p, e] : f.factors) {
    u64 pk = 1;
    for (unsigned i = 1; i < e; ++i) pk *= p;
    mp.phi *= pk * (p - 1);
    mp.d *= e + 1;
    ++mp.omega;
    if (e >= 2) {
      mp.mu = 0;
      mp.sigma_core *= p;
    } else {
      mp.squarefree_kernel *= p;
    }
  }
  if (mp.mu != 0) mp.mu = (mp.omega % 2 == 0) ? 1 : -1;
  return mp;
}

int jacobi_symbol(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0)
    throw std::invalid_argument("jacobi_symbol: modulus must be odd and positive");
  u64 m = static_cast<u64>(n);
  u64 x = mod_canonical(a, m);
  int result = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const u64 r = m & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if ((x & 3) == 3 && (m & 3) == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

u64 mod_inverse(i64 x, u64 q) {
  if (q == 0) throw std::invalid_argument("mod_inverse: zero modulus");
  if (q == 1) return 0;
  const u64 a = mod_canonical(x, q);
  __int128 old_r = a, r = q, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
  }
  if (old_r != 1)
    throw std::domain_error("mod_inverse: " + std::to_string(x) + " is not invertible mod " +
                            std::to_string(q));
  __int128 inv = old_s % static_cast<__int128>(q);
  if (inv < 0) inv += q;
  return static_cast<u64>(inv);
}

// ---------------------------------------------------------------------------
// Squarefree sieve

SieveWindow::SieveWindow(u64 lo, u64 hi, std::vector<u64> words)
    : lo_(lo), hi_(hi), words_(std::move(words)) {}

bool SieveWindow::is_squarefree(u64 n) const {
  if (n < lo_ || n >= hi_) throw std::out_of_range("SieveWindow: n outside window");
  const u64 i = n - lo_;
  return (words_[i >> 6] >> (i & 63)) & 1;
}

u64 SieveWindow::count() const {
  u64 total = 0;
  for (u64 w : words_) total += static_cast<u64>(std::popcount(w));
  return total;
}

u64 SieveWindow::count_up_to(u64 x) const {
  if (x < lo_) return 0;
  const u64 end = std::min(hi_, x + 1) - lo_;
  const u64 full = end >> 6;
  u64 total = 0;
  for (u64 w = 0; w < full; ++w) total += static_cast<u64>(std::popcount(words_[w]));
  const u64 rem = end & 63;
  if (rem != 0) total += static_cast<u64>(std::popcount(words_[full] & ((u64{1} << rem) - 1)));
  return total;
}

SieveWindow squarefree_window(u64 lo, u64 hi) {
  if (hi <= lo) throw std::invalid_argument("squarefree_window: hi must exceed lo");
  if (hi > kMaxInput) throw std::invalid_argument("squarefree_window: hi exceeds 2^63");
  const u64 len = hi - lo;
  std::vector<u64> words((len + 63) / 64, ~u64{0});
  if (len % 64 != 0) words.back() = (u64{1} << (len % 64)) - 1;
  if (lo == 0) words[0] &= ~u64{1};

  const u64 root = isqrt(hi - 1);
  auto clear_multiples = [&](u64 d, u64 seg_lo, u64 seg_hi) {
    const u64 d2 = d * d;
    u64 start = (seg_lo / d2) * d2;
    if (start < seg_lo) start += d2;
    for (u64 n = start; n < seg_hi; n += d2) {
      const u64 i = n - lo;
      words[i >> 6] &= ~(u64{1} << (i & 63));
    }
  };

  for (u64 seg_lo = lo; seg_lo < hi; seg_lo += std::min(kSegmentBits, hi - seg_lo)) {
    const u64 seg_hi = std::min(hi, seg_lo + kSegmentBits);
    const u64 seg_root = isqrt(seg_hi - 1);
    for (std::uint32_t p : small_primes()) {
      if (p > seg_root) break;
      clear_multiples(p, seg_lo, seg_hi);
    }
    // Beyond the prime table every d coprime to 210 is used; composite d
    // only clear numbers that some p^2 already cleared.
    for (u64 d = kSmallPrimeLimit + 1; d <= std::min(root, seg_root); ++d) {
      if (d % 2 == 0 || d % 3 == 0 || d % 5 == 0 || d % 7 == 0) continue;
      clear_multiples(d, seg_lo, seg_hi);
    }
  }
  return SieveWindow(lo, hi, std::move(words));
}

std::vector<u64> squarefree_counts_by_residue(const SieveWindow& window, u64 X, u64 q) {
  if (q == 0) throw std::invalid_argument("squarefree_counts_by_residue: q must be positive");
  if (q > X) throw std::invalid_argument("squarefree_counts_by_residue: q exceeds X");
  if (window.lo() > 1 || window.hi() <= X)
    throw std::invalid_argument("squarefree_counts_by_residue: window does not cover [1, X]");
  std::vector<u64> counts(q, 0);
  const auto words = window.words();
  const u64 last = X - window.lo();
  for (std::size_t w = 0; w < words.size(); ++w) {
    const u64 first_index = 64 * static_cast<u64>(w);
    if (first_index > last) break;
    u64 bits = words[w];
    if (last - first_index < 63) bits &= (u64{1} << (last - first_index + 1)) - 1;
    const u64 base = (window.lo() + first_index) % q;
    while (bits != 0) {
      const u64 b = static_cast<u64>(__builtin_ctzll(bits));
      u64 r = base + b;
      if (r >= q) r %= q;
      ++counts[r];
      bits &= bits - 1;
    }
  }
  return counts;
}

std::vector<u64> squarefree_counts_by_residue(u64 X, u64 q) {
  if (q == 0) throw std::invalid_argument("squarefree_counts_by_residue: q must be positive");
  if (q > X) throw std::invalid_argument("squarefree_counts_by_residue: q exceeds X");
  return squarefree_counts_by_residue(squarefree_window(1, X + 1), X, q);
}

}  // namespace sqflab
