#include <cmath>
#include <random>
#include <string>

#include "sqflab/asymptotics.hpp"
#include "sqflab/counters.hpp"
#include "sqflab/expsums.hpp"
#include "sqflab/report.hpp"
#include "sqflab/zeta.hpp"

namespace sqflab {

namespace {

// Bounds with exact constants can be attained; allow double rounding only.
constexpr double kFloatSlack = 1e-9;

using Params = std::vector<std::pair<std::string, std::string>>;

std::string s(u64 v) { return std::to_string(v); }
std::string s(i64 v) { return std::to_string(v); }
std::string s(int v) { return std::to_string(v); }

constexpr Real kPrintedC = 0.167L;

void append(std::vector<VerificationRecord>& out, std::vector<VerificationRecord> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<VerificationRecord> identities_suite(Real eps) {
  auto out = identity_suite(100, 100);

  // f_q at l = 0: defining product against the closed form, prime by prime.
  for (const i64 m : {1, -1, 2, -2, 3, -3, 6, 10}) {
    for (const u64 q : {1ULL, 5ULL, 12ULL}) {
      if (gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
      u64 mismatches = 0;
      for (const auto p : primes_up_to(10000))
        if (fq_zero_local_literal(p, m, q) != fq_zero_local_closed(p, m, q)) ++mismatches;
      out.push_back(make_record("fq_zero_local_factors", {{"m", s(m)}, {"q", s(q)}, {"p_max", "10000"}},
                                static_cast<Real>(mismatches), 0, 0));
    }
  }

  // h = 1 * beta.
  u64 conv_bad = 0;
  for (u64 d = 1; d <= 10000; ++d) {
    Rational acc = 0;
    for (u64 a = 1; a * a <= d; ++a) {
      if (d % a) continue;
      acc += beta_of(a);
      if (a * a != d) acc += beta_of(d / a);
    }
    if (acc != h_of(d)) ++conv_bad;
  }
  out.push_back(make_record("h_equals_one_star_beta", {{"d_max", "10000"}}, static_cast<Real>(conv_bad), 0, 0));

  // Constants.
  const ApproxReal c2 = euler_constant(ConstantKind::C2, 1, eps);
  out.push_back(make_record("constant_C2_value", {}, c2.value, 0.322634098L, 1e-9L));
  const ApproxReal C = euler_constant(ConstantKind::C, 1, eps);
  const LocalFactorFn fC = local_factor(ConstantKind::C);
  const ApproxReal z = zeta(1.5L);
  for (const u64 P : {1000000ULL, 10000000ULL}) {
    const ApproxReal plain = truncated_euler_product(fC, P) * z * ApproxReal(1 / pi_real(), kRealEps);
    out.push_back(make_record("constant_C_truncation", {{"P", s(P)}}, plain.value, C.value,
                              plain.abs_err + C.abs_err));
  }
  out.push_back(make_record("constant_C_printed", {{"printed", "0.167"}}, C.value, kPrintedC, 0,
                            CheckMode::report_only));
  return out;
}

std::vector<VerificationRecord> expsums_suite(std::uint64_t seed) {
  std::vector<VerificationRecord> out;
  std::mt19937_64 rng(seed);
  const std::vector<u64> odd_primes = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  const std::vector<std::pair<u64, i64>> samples = {{1, 1}, {2, -3}, {10, 7}};

  // S1 vanishes at d = 0: literal sum over every (b, c).
  for (const u64 p : odd_primes) {
    for (const auto& [q, m2] : samples) {
      if (q % p == 0 || static_cast<u64>(m2 < 0 ? -m2 : m2) % p == 0) continue;
      double worst = 0;
      for (u64 b = 0; b < p; ++b)
        for (u64 c = 0; c < p; ++c)
          worst = std::max(worst, s1_sum_literal(p, q, m2, static_cast<i64>(b), static_cast<i64>(c), 0).abs());
      const Real P = static_cast<Real>(p);
      out.push_back(make_record("s1_vanishes_at_d0", {{"p", s(p)}, {"q", s(q)}, {"m2", s(m2)}}, worst, 0,
                                1e-9L * P * P * P));
    }
  }

  // |S1| <= 2 p^{3/2}, and the factored path equals the literal sum.
  for (const u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    const u64 q = 2;
    const i64 m2 = 1;
    double worst_ratio = 0, worst_diff = 0;
    for (u64 b = 0; b < p; ++b)
      for (u64 c = 0; c < p; ++c)
        for (u64 d = 0; d < p; ++d) {
          const auto f = s1_sum(p, q, m2, b, c, d);
          const auto l = s1_sum_literal(p, q, m2, b, c, d);
          worst_ratio = std::max(worst_ratio, f.abs() / (2 * std::pow(static_cast<double>(p), 1.5)));
          worst_diff = std::max(worst_diff, std::abs(f.value() - l.value()));
        }
    out.push_back(make_record("s1_bound_two_p_three_halves", {{"p", s(p)}}, std::max(worst_ratio, 1.0), 1.0, kFloatSlack));
    out.push_back(make_record("s1_factored_equals_literal", {{"p", s(p)}}, worst_diff, 0,
                              1e-9L * std::pow(static_cast<Real>(p), 3)));
  }

  // |S2(r)| <= 2 r (r, b, c, d m2).
  auto gcd4 = [](u64 R, u64 b, u64 c, u64 dm) { return gcd(gcd(gcd(R, b), c), dm); };
  for (const u64 r : {3ULL, 5ULL, 7ULL, 11ULL}) {
    for (const auto& [q, m2] : std::vector<std::pair<u64, i64>>{{1, 1}, {2, 5}}) {
      if (q % r == 0) continue;
      double worst = 0;
      for (u64 b = 0; b < r; ++b)
        for (u64 c = 0; c < r; ++c)
          for (u64 d = 0; d < r; ++d) {
            const u64 dm = mulmod(d, mod_canonical(m2, r), r);
            const double bound = 2.0 * r * gcd4(r, b, c, dm);
            worst = std::max(worst, s2_sum(r, 1, q, m2, b, c, d).abs() / bound);
          }
      out.push_back(make_record("s2_prime_bound", {{"r", s(r)}, {"q", s(q)}, {"m2", s(m2)}},
                                std::max(worst, 1.0), 1.0, kFloatSlack));
    }
  }

  // Prime powers: constant 2 for odd r, 4 for r = 2.
  const std::vector<std::pair<u64, unsigned>> powers = {{3, 2}, {5, 2}, {3, 3}, {7, 2}, {2, 2}, {2, 3}, {2, 4}};
  for (const auto& [r, f] : powers) {
    u64 R = 1;
    for (unsigned i = 0; i < f; ++i) R *= r;
    const u64 q = r == 2 ? 3 : 2;
    const i64 m2 = 1;
    const double constant = r == 2 ? 4.0 : 2.0;
    double worst = 0;
    for (u64 b = 0; b < R; ++b)
      for (u64 c = 0; c < R; ++c)
        for (u64 d = 0; d < R; ++d) {
          const double g = static_cast<double>(gcd4(R, b, c, d));
          const double bound = constant * std::pow(static_cast<double>(R), 1.5) * std::sqrt(g);
          worst = std::max(worst, s2_sum(r, f, q, m2, b, c, d).abs() / bound);
        }
    out.push_back(make_record("s2_prime_power_bound", {{"r", s(r)}, {"f", s(static_cast<int>(f))}},
                              std::max(worst, 1.0), 1.0, kFloatSlack));
  }

  // Gauss sums have modulus sqrt(p) away from p | t.
  for (const u64 p : odd_primes) {
    double worst = 0;
    for (u64 t = 1; t < p; ++t) worst = std::max(worst, std::fabs(gauss_sum(t, p).abs() - std::sqrt(double(p))));
    out.push_back(make_record("gauss_sum_modulus", {{"p", s(p)}}, worst, 0, 1e-9L));
  }

  // CRT factorization on random tuples.
  const std::vector<u64> ps = {3, 5, 7, 11};
  const std::vector<u64> us = {1, 2, 4, 8, 9, 13};
  int made = 0;
  while (made < 50) {
    const u64 p1 = ps[rng() % ps.size()];
    const u64 p2 = ps[rng() % ps.size()];
    const u64 u = us[rng() % us.size()];
    if (p1 == p2 || gcd(u, p1 * p2) != 1) continue;
    const u64 q = 1 + rng() % 40;
    const i64 m2 = static_cast<i64>(1 + rng() % 10) * ((rng() & 1) ? 1 : -1);
    const u64 qm = static_cast<u64>(m2 < 0 ? -m2 : m2);
    if (gcd(u, q) != 1 || gcd(u, qm) != 1 || q % p1 == 0 || q % p2 == 0 || qm % p1 == 0 || qm % p2 == 0)
      continue;
    const u64 M = u * p1 * p2;
    const i64 lambda = static_cast<i64>(rng() % M), mu = static_cast<i64>(rng() % M),
              nu = static_cast<i64>(rng() % M);
    out.push_back(crt_factor_check(u, p1, p2, q, m2, lambda, mu, nu));
    ++made;
  }
  return out;
}

std::vector<VerificationRecord> asymptotics_suite(Real eps) {
  std::vector<VerificationRecord> out;

  for (const Real sv : {0.5L, 1.0L, 1.5L}) {
    const ApproxReal lim = psi_mellin_limit(sv);
    for (const Real X : {1e2L, 1e4L, 1e6L}) {
      const ApproxReal I = psi_mellin_integral(X, sv);
      out.push_back(make_record("sawtooth_mellin_limit", {{"s", format_real(sv)}, {"X", format_real(X)}},
                                I.value, lim.value, std::pow(X, -sv / 2)));
    }
  }

  for (const Real Y : {1e3L, 1e4L, 1e5L}) {
    for (const u64 r : {1ULL, 2ULL, 6ULL}) {
      const u64 root = static_cast<u64>(std::ceil(std::sqrt(Y)));
      const ApproxReal a = G_of(Y, r, eps, root);
      const ApproxReal b = G_of(Y, r, eps, 2 * root);
      out.push_back(make_record("G_split_invariance", {{"Y", format_real(Y)}, {"r", s(r)}}, a.value, b.value,
                                2 * eps + a.abs_err + b.abs_err));
    }
  }

  const std::vector<std::pair<i64, u64>> cells = {{1, 1}, {2, 1}, {3, 1}, {-1, 1}, {1, 5}, {2, 5},
                                                  {3, 5}, {-1, 5}, {1, 12}, {-1, 12}};
  for (const auto& [m, q] : cells) {
    for (const Real X : {1e3L, 1e4L, 1e5L}) {
      const ApproxReal a = A_exact(X, q, m, eps);
      const ApproxReal b = A_decomposition(X, q, m, eps);
      const Params p{{"X", format_real(X)}, {"q", s(q)}, {"m", s(m)}};
      out.push_back(make_record("A_decomposition", p, a.value, b.value,
                                1e-9L * std::max<Real>(std::fabs(a.value), 1)));
      out.push_back(make_record("A_main_term", p, a.value, A_formula(X, q, m, eps).value, 0,
                                CheckMode::report_only));
    }
  }

  for (const u64 X : {10000ULL, 100000ULL}) {
    const SieveWindow w = squarefree_window(1, X + 1);
    for (const u64 q : {7ULL, 97ULL, 100ULL, 1009ULL}) {
      const auto ev = error_vector(w, X, q, eps);
      for (const i64 m : {1, -1, 2, 3, -5}) {
        if (gcd(static_cast<u64>(m < 0 ? -m : m), q) != 1) continue;
        out.push_back(dispersion_check(ev, m));
      }
    }
  }

  const Real Y = 3000;
  const ApproxReal exact = frakS_exact(Y, 1, 1, eps);
  const std::pair<FrakSForm, const char*> forms[] = {{FrakSForm::corrected, "corrected"},
                                                      {FrakSForm::printed, "printed"},
                                                      {FrakSForm::restated_plus, "restated_plus"}};
  for (const auto& [form, name] : forms) {
    out.push_back(make_record("frakS_closed_form", {{"Y", "3000"}, {"q", "1"}, {"m", "1"}, {"form", name}},
                              exact.value, frakS_formula(Y, 1, 1, eps, form).at(Y).value, 0,
                              CheckMode::report_only));
  }

  const u64 X = 1000000;
  const SieveWindow w = squarefree_window(1, X + 1);
  for (const u64 q : {10007ULL, 100003ULL, 500009ULL}) {
    const auto r = correlation(error_vector(w, X, q, eps), 1);
    const auto t = theorem_main_terms(static_cast<Real>(X), q, 1, eps);
    out.push_back(make_record("variance_main_term", {{"X", s(X)}, {"q", s(q)}}, r.M2_exact.value,
                              t.M2_main.value, 0, CheckMode::report_only));
    const Real printed = t.M2_main.value / euler_constant(ConstantKind::C, 1, eps).value * kPrintedC;
    out.push_back(make_record("variance_main_term_printed_C", {{"X", s(X)}, {"q", s(q)}}, r.M2_exact.value,
                              printed, 0, CheckMode::report_only));
  }
  return out;
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "identities") return Suite::identities;
  if (name == "expsums") return Suite::expsums;
  if (name == "asymptotics") return Suite::asymptotics;
  if (name == "all") return Suite::all;
  return std::nullopt;
}

std::vector<VerificationRecord> run_verify(Suite suite, std::uint64_t seed, Real eps) {
  std::vector<VerificationRecord> out;
  if (suite == Suite::identities || suite == Suite::all) append(out, identities_suite(eps));
  if (suite == Suite::expsums || suite == Suite::all) append(out, expsums_suite(seed));
  if (suite == Suite::asymptotics || suite == Suite::all) append(out, asymptotics_suite(eps));
  return out;
}

}  // namespace sqflab
