#include "sqflab/verification.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

namespace sqflab {

void VerificationRecord::settle() {
  if (mode == CheckMode::report_only) {
    pass = true;
    return;
  }
  pass = std::isfinite(lhs) && std::isfinite(rhs) && std::fabs(lhs - rhs) <= tolerance;
}

VerificationRecord make_record(std::string check_id,
                               std::vector<std::pair<std::string, std::string>> params, Real lhs,
                               Real rhs, Real tolerance, CheckMode mode) {
  VerificationRecord r{std::move(check_id), std::move(params), lhs, rhs, tolerance, mode, true};
  r.settle();
  return r;
}

std::string format_real(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

std::string format_params(const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<VerificationRecord>& records) {
  os << "check_id,params,lhs,rhs,tol,mode,pass\n";
  for (const auto& r : records) {
    os << r.check_id << ',' << format_params(r.params) << ',' << format_real(r.lhs) << ','
       << format_real(r.rhs) << ',' << format_real(r.tolerance) << ','
       << (r.mode == CheckMode::assert_mode ? "assert" : "report_only") << ','
       << (r.pass ? "true" : "false") << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<VerificationRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    arr.push_back({{"check_id", r.check_id},
                   {"params", params},
                   {"lhs", format_real(r.lhs)},
                   {"rhs", format_real(r.rhs)},
                   {"tol", format_real(r.tolerance)},
                   {"mode", r.mode == CheckMode::assert_mode ? "assert" : "report_only"},
                   {"pass", r.pass}});
  }
  os << arr.dump(2) << '\n';
}

bool all_passed(const std::vector<VerificationRecord>& records) {
  for (const auto& r : records)
    if (r.mode == CheckMode::assert_mode && !r.pass) return false;
  return true;
}

}  // namespace sqflab
