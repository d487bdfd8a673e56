#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sqflab/counters.hpp"
#include "sqflab/report.hpp"

namespace sqflab {

namespace {

constexpr Real kPrintedC = 0.167L;

std::string fmt(Real x) { return format_real(x); }

u64 abs_u(i64 m) { return m < 0 ? static_cast<u64>(-(m + 1)) + 1 : static_cast<u64>(m); }

struct Row {
  u64 q = 0;
  std::vector<std::string> cells;
};

Row variance_row(const ScanRequest& req, const SieveWindow& window, u64 q) {
  const auto ev = error_vector(window, req.X, q, req.eps);
  const auto r = correlation(ev, req.m);
  const Real X = static_cast<Real>(req.X), Q = static_cast<Real>(q);
  const Real hall = euler_constant(ConstantKind::hall_factor, q, req.eps).value;
  const Real C = euler_constant(ConstantKind::C, 1, req.eps).value;
  const Real shape = gamma_an(req.m) * gamma_ar(req.m) / 2 * hall * std::sqrt(X * Q);
  const Real main = C * shape;
  const Real printed = kPrintedC * shape;
  const Real L = std::log(X);
  const auto dq = multiplicative_profile(factorize(q)).d;
  const Real budget = static_cast<Real>(dq) * std::cbrt(X) * std::pow(Q, 2.0L / 3) +
                      std::pow(X, 23.0L / 15) * std::pow(Q, -13.0L / 15) * std::pow(L, 15);
  return {q,
          {std::to_string(req.X), std::to_string(q), std::to_string(req.m), fmt(r.M2_exact.value),
           fmt(r.M2_exact.abs_err), fmt(main), fmt(r.M2_exact.value / main), fmt(printed),
           fmt(r.M2_exact.value / printed), fmt(budget), fmt(r.decomposition_residual)}};
}

Row croft_row(const ScanRequest& req, const SieveWindow& window, u64 q) {
  const auto ev = error_vector(window, req.X, q, req.eps);
  const auto croft = croft_variance(ev, req.eps);
  const auto r = correlation(ev, 1);
  return {q,
          {std::to_string(req.X), std::to_string(q), std::to_string(1), fmt(croft.value),
           fmt(croft.abs_err), fmt(r.M2_exact.value), fmt(croft.value - r.M2_exact.value)}};
}

Row hooley_row(const ScanRequest& req, const SieveWindow& window, u64 q) {
  const auto ev = error_vector(window, req.X, q, req.eps);
  const auto h = hooley_report(ev);
  return {q,
          {std::to_string(req.X), std::to_string(q), std::to_string(1), fmt(h.max_abs_error),
           fmt(h.envelope), fmt(h.ratio)}};
}

}  // namespace

std::optional<ScanKind> parse_scan_kind(std::string_view name) {
  if (name == "variance") return ScanKind::variance;
  if (name == "correlation") return ScanKind::correlation;
  if (name == "croft") return ScanKind::croft;
  if (name == "hooley") return ScanKind::hooley;
  return std::nullopt;
}

unsigned worker_threads(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("SQFLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<u64> q_exponent_range(u64 X, Real lo, Real hi, unsigned n) {
  if (n == 0 || hi < lo) throw std::invalid_argument("q_exponent_range: bad range");
  std::vector<u64> out;
  for (unsigned i = 0; i < n; ++i) {
    const Real theta = n == 1 ? lo : lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(n - 1);
    out.push_back(static_cast<u64>(std::llround(std::pow(static_cast<Real>(X), theta))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ScanTable run_scan(const ScanRequest& req) {
  if (req.X == 0) throw std::invalid_argument("scan: X must be positive");
  ScanRequest r = req;
  if (r.kind != ScanKind::correlation) r.m = 1;
  if (r.m == 0) throw std::invalid_argument("scan: m must be nonzero");
  if (r.kind == ScanKind::correlation && !factorize(abs_u(r.m)).is_squarefree())
    throw std::invalid_argument("scan: m must be squarefree");

  ScanTable table;
  switch (r.kind) {
    case ScanKind::variance:
    case ScanKind::correlation:
      table.columns = {"X", "q", "m", "statistic", "abs_err", "main_term", "ratio",
                       "main_term_printed_C", "ratio_printed_C", "error_budget",
                       "dispersion_residual"};
      break;
    case ScanKind::croft:
      table.columns = {"X", "q", "m", "all_class_variance", "abs_err", "coprime_variance",
                       "non_coprime_part"};
      break;
    case ScanKind::hooley:
      table.columns = {"X", "q", "m", "max_abs_error", "envelope", "ratio"};
      break;
  }

  std::vector<u64> qs;
  for (const u64 q : r.q_values) {
    if (q == 0 || q > r.X) {
      table.warnings.push_back("skipping q=" + std::to_string(q) + ": need 1 <= q <= X");
      continue;
    }
    if (gcd(abs_u(r.m), q) != 1) {
      table.warnings.push_back("skipping q=" + std::to_string(q) + ": gcd(m, q) > 1");
      continue;
    }
    qs.push_back(q);
  }
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  if (qs.empty()) return table;

  const SieveWindow window = squarefree_window(1, r.X + 1);
  std::vector<Row> rows(qs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(qs.size());
  auto work = [&] {
    for (std::size_t i = next++; i < qs.size(); i = next++) {
      try {
        switch (r.kind) {
          case ScanKind::variance:
          case ScanKind::correlation:
            rows[i] = variance_row(r, window, qs[i]);
            break;
          case ScanKind::croft:
            rows[i] = croft_row(r, window, qs[i]);
            break;
          case ScanKind::hooley:
            rows[i] = hooley_row(r, window, qs[i]);
            break;
        }
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  const unsigned n = std::min<unsigned>(worker_threads(r.threads), static_cast<unsigned>(qs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!errors[i].empty()) throw std::runtime_error("scan: q=" + std::to_string(qs[i]) + ": " + errors[i]);
    table.rows.push_back(std::move(rows[i].cells));
  }
  return table;
}

void write_csv(std::ostream& os, const ScanTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void write_json(std::ostream& os, const ScanTable& table) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace sqflab
