#pragma once

// Sawtooth integrals, G(Y, r), the weighted sums frakS[m](Y, q) and
// A[m](X, q), each with an exact path and its closed-form main term.

#include <optional>

#include "sqflab/approx.hpp"
#include "sqflab/arith.hpp"
#include "sqflab/multiplicative.hpp"

namespace sqflab {

/// floor(v) - v + 1/2.
Real psi(Real v);
/// Integral of psi over [0, x] for x >= 0: ({x} - {x}^2)/2.
Real psi_antiderivative(Real x);

/// Integral of psi(v) v^{-s/2} over [0, X], exactly per unit interval.
/// Requires 0 < s < 2 and X > 1.
ApproxReal psi_mellin_integral(Real X, Real s);
/// zeta(s/2 - 1)/(s/2 - 1), the X -> infinity value.
ApproxReal psi_mellin_limit(Real s);

/// sum_{(d,r)=1} h(d) Psi_1(Y/d^2): exact head d <= D, tail through the
/// h-series Euler products. D defaults to ceil(Y^{2/3}) and is raised to
/// floor(sqrt Y) when smaller.
ApproxReal G_of(Real Y, u64 r, Real eps = kDefaultEps, std::optional<u64> D = std::nullopt);
/// C' prod_{p|r} (1 + p/(p^2-2))^{-1} sqrt(Y).
ApproxReal G_main_term(Real Y, u64 r, Real eps = kDefaultEps);

/// As G_of with h replaced by 1.
ApproxReal aux_G_unweighted(Real Y, u64 r, Real eps = kDefaultEps,
                            std::optional<u64> D = std::nullopt);
/// (phi(r)/r) (zeta(3/2)/(2 pi)) sqrt(Y).
ApproxReal aux_G_main_term(Real Y, u64 r, Real eps = kDefaultEps);

/// Coefficients of frakS[m](Y, q) = quadratic Y^2 - linear Y + half_power Y^{1/2}
/// + remainder.
struct MainTermBreakdown {
  ApproxReal quadratic;
  ApproxReal linear;
  ApproxReal half_power;
  Real remainder = 0;

  ApproxReal at(Real Y) const;
};

/// sum_{0 < l <= Y} f_q(l, m) (Y - l).
ApproxReal frakS_exact(Real Y, u64 q, i64 m, Real eps = kDefaultEps);

enum class FrakSForm {
  corrected,      // phi(q)/(2q) C(q)^2, phi(|m|q)/(2|m|q) C(|m|q), (C/2) Gamma_ar hall
  printed,        // quadratic and linear coefficients twice as large
  restated_plus,  // printed coefficients with a "+" middle term
};

MainTermBreakdown frakS_formula(Real Y, u64 q, i64 m, Real eps = kDefaultEps,
                                FrakSForm form = FrakSForm::corrected);

/// sum_l f_q(l, m) |I(l)| over |l| <= (|m|+1) X/q. Requires q <= X.
ApproxReal A_exact(Real X, u64 q, i64 m, Real eps = kDefaultEps);
/// The same quantity assembled from three frakS values.
ApproxReal A_decomposition(Real X, u64 q, i64 m, Real eps = kDefaultEps);
/// phi(q) (C(q) X/q)^2 + (C/2) Gamma_an Gamma_ar hall(q) sqrt(X q).
ApproxReal A_formula(Real X, u64 q, i64 m, Real eps = kDefaultEps);

struct TheoremMainTerms {
  ApproxReal S_main;
  ApproxReal M2_main;
  ApproxReal S_main_printed;  // leading term phi(q)/2 (C(q) X/q)^2
};

TheoremMainTerms theorem_main_terms(Real X, u64 q, i64 m, Real eps = kDefaultEps);

}  // namespace sqflab
