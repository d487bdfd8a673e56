#include "sqflab/zeta.hpp"

#include <array>
#include <stdexcept>

#include "quad.hpp"

namespace sqflab {
namespace detail {
namespace {

struct Bernoulli {
  long long num;
  long long den;
};

// B_2, B_4, ..., B_32.
constexpr std::array<Bernoulli, 16> kB2j = {{{1, 6},
                                             {-1, 30},
                                             {1, 42},
                                             {-1, 30},
                                             {5, 66},
                                             {-691, 2730},
                                             {7, 6},
                                             {-3617, 510},
                                             {43867, 798},
                                             {-174611, 330},
                                             {854513, 138},
                                             {-236364091, 2730},
                                             {8553103, 6},
                                             {-23749461029LL, 870},
                                             {8615841276005LL, 14322},
                                             {-7709321041217LL, 510}}};

constexpr int kHead = 40;
constexpr int kTerms = 15;  // the 16th term bounds the remainder

}  // namespace

QuadApprox zeta_quad(Quad s) {
  if (s == 1) throw std::domain_error("zeta: pole at s = 1");
  if (s <= -25) throw std::domain_error("zeta: s out of supported range");

  Quad sum = 0;
  Quad abs_sum = 0;
  for (int n = kHead - 1; n >= 1; --n) {
    const Quad t = powq(static_cast<Quad>(n), -s);
    sum += t;
    abs_sum += t;
  }
  const Quad N = kHead;
  const Quad n_pow = powq(N, -s);
  sum += N * n_pow / (s - 1) + n_pow / 2;
  abs_sum += qabs(N * n_pow / (s - 1)) + n_pow / 2;

  // T_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
  Quad rising = s;           // s (s+1) ... (s+2j-2)
  Quad fact = 2;             // (2j)!
  Quad n_term = n_pow / N;   // N^{-s-2j+1}
  Quad last = 0;
  for (int j = 1; j <= kTerms + 1; ++j) {
    const Quad b = static_cast<Quad>(kB2j[j - 1].num) / static_cast<Quad>(kB2j[j - 1].den);
    const Quad term = b / fact * rising * n_term;
    if (j <= kTerms) {
      sum += term;
      abs_sum += qabs(term);
    } else {
      last = qabs(term);
    }
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= static_cast<Quad>(2 * j + 1) * static_cast<Quad>(2 * j + 2);
    n_term /= N * N;
  }
  // For real s > -(2 kTerms + 1) the remainder is bounded by the first
  // omitted term; powq is accurate to a few ulps.
  return {sum, last + 16 * kQuadEps * abs_sum + kQuadEps * (kHead + 40) * abs_sum};
}

}  // namespace detail

ApproxReal zeta(Real s) { return detail::to_approx(detail::zeta_quad(static_cast<detail::Quad>(s))); }

Real pi_real() { return static_cast<Real>(M_PIq); }

}  // namespace sqflab
