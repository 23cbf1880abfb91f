#include "speclab/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace speclab {

namespace constants {

double improved_cheeger() { return 8.0 * std::sqrt(2.0); }

double ratio_bound() {
  const double r = 16.0 * std::numbers::e / (std::numbers::e - 1.0);
  return r * r;
}

double buser_ledoux() { return (std::numbers::e - 1.0) / (std::sqrt(2.0) * std::numbers::e); }

double higher_buser() {
  const double em1 = std::numbers::e - 1.0;
  return em1 * em1 / (16.0 * std::sqrt(2.0) * std::numbers::e * std::numbers::e);
}

double obsdiam_factor() { return 152.0; }

}  // namespace constants

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Reported: return "REPORTED";
    case CheckStatus::Skip: return "SKIP";
    case CheckStatus::Error: return "ERROR";
  }
  return "UNKNOWN";
}

bool InequalityReport::passes(double lhs, double rhs) {
  return lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

void InequalityReport::finalize() {
  if (asserted)
    status = passes(lhs, rhs) ? CheckStatus::Pass : CheckStatus::Fail;
  else
    status = CheckStatus::Reported;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_header() { return "check,model,k,lhs,rhs,slack,status"; }

std::string to_csv_row(const InequalityReport& r) {
  std::string row = r.name;
  row += ',';
  row += r.model;
  row += ',';
  if (r.k >= 0) row += std::to_string(r.k);
  row += ',';
  row += format_g17(r.lhs);
  row += ',';
  row += format_g17(r.rhs);
  row += ',';
  row += format_g17(r.slack());
  row += ',';
  row += check_status_name(r.status);
  return row;
}

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json j{{"check", r.name},
                   {"model", r.model},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"slack", r.slack()},
                   {"asserted", r.asserted},
                   {"status", check_status_name(r.status)}};
  if (r.k >= 0) j["k"] = r.k;
  if (!r.constants.empty()) j["constants"] = r.constants;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

}  // namespace speclab
