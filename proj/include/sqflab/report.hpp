#pragma once

// Verification suites and parameter scans behind the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqflab/arith.hpp"
#include "sqflab/multiplicative.hpp"
#include "sqflab/verification.hpp"

namespace sqflab {

enum class Suite { identities, expsums, asymptotics, all };

std::optional<Suite> parse_suite(std::string_view name);

/// Runs a battery of checks; deterministic for a given seed.
std::vector<VerificationRecord> run_verify(Suite suite, std::uint64_t seed, Real eps = kDefaultEps);

enum class ScanKind { variance, correlation, croft, hooley };

std::optional<ScanKind> parse_scan_kind(std::string_view name);

struct ScanRequest {
  ScanKind kind = ScanKind::variance;
  u64 X = 0;
  std::vector<u64> q_values;
  i64 m = 1;
  Real eps = kDefaultEps;
  unsigned threads = 0;  // 0: SQFLAB_THREADS or hardware concurrency
};

struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> warnings;
};

/// One row per admissible q, sorted by (X, q, m). q > X and gcd(m, q) > 1
/// are skipped with a warning.
ScanTable run_scan(const ScanRequest& request);

/// n values q = round(X^theta), theta evenly spaced on [lo, hi], deduplicated.
std::vector<u64> q_exponent_range(u64 X, Real lo, Real hi, unsigned n);

/// Worker count: requested if nonzero, else SQFLAB_THREADS, else hardware.
unsigned worker_threads(unsigned requested);

void write_csv(std::ostream& os, const ScanTable& table);
void write_json(std::ostream& os, const ScanTable& table);

}  // namespace sqflab
