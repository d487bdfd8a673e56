#pragma once

// One identity or bound check, as emitted by the verification suites.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sqflab/approx.hpp"

namespace sqflab {

enum class CheckMode { assert_mode, report_only };

struct VerificationRecord {
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> params;
  Real lhs = 0;
  Real rhs = 0;
  Real tolerance = 0;
  CheckMode mode = CheckMode::assert_mode;
  bool pass = true;

  /// pass = |lhs - rhs| <= tolerance for assert records, true otherwise.
  void settle();
};

/// Builds and settles a record.
VerificationRecord make_record(std::string check_id,
                               std::vector<std::pair<std::string, std::string>> params, Real lhs,
                               Real rhs, Real tolerance,
                               CheckMode mode = CheckMode::assert_mode);

/// Formats with 17 significant digits.
std::string format_real(Real x);

std::string format_params(const std::vector<std::pair<std::string, std::string>>& params);

void write_csv(std::ostream& os, const std::vector<VerificationRecord>& records);
void write_json(std::ostream& os, const std::vector<VerificationRecord>& records);

/// True when every assert-mode record passed.
bool all_passed(const std::vector<VerificationRecord>& records);

}  // namespace sqflab
