#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace speclab {

// All named constants are computed from their closed forms; nothing is typed
// in as a decimal literal.
namespace constants {
double improved_cheeger();   // 8 sqrt(2)
double ratio_bound();        // (16 e / (e-1))^2
double buser_ledoux();       // (e-1) / (sqrt(2) e)
double higher_buser();       // (e-1)^2 / (16 sqrt(2) e^2)
double obsdiam_factor();     // 152
}  // namespace constants

enum class CheckStatus { Pass, Fail, Reported, Skip, Error };

const char* check_status_name(CheckStatus s);

struct InequalityReport {
  std::string name;
  std::string model;
  int k = -1;  // -1 when not applicable
  double lhs = 0.0;
  double rhs = 0.0;
  bool asserted = true;
  CheckStatus status = CheckStatus::Reported;
  std::map<std::string, double> constants;  // ordered => stable serialization
  std::string note;
  nlohmann::json details = nlohmann::json::object();

  double slack() const { return rhs - lhs; }

  // Uniform pass rule for asserted inequalities.
  static bool passes(double lhs, double rhs);

  // Sets status from `asserted` and the pass rule.
  void finalize();
};

// %.17g, enough digits for an exact double round-trip.
std::string format_g17(double v);

// "check,model,k,lhs,rhs,slack,status" (k empty when not applicable)
std::string csv_header();
std::string to_csv_row(const InequalityReport& r);
nlohmann::json to_json(const InequalityReport& r);

}  // namespace speclab
