#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speclab/graph.hpp"
#include "speclab/model_spaces.hpp"
#include "speclab/report.hpp"
#include "speclab/spectra.hpp"

namespace speclab {

struct ModelConfig {
  std::string name;  // CSV/report label; derived from parameters when empty
  std::string kind;  // "circle" | "torus" | "file"
  double a = 0.0;
  int dim = 0;
  std::vector<int> counts;
  double points_per_unit = 0.0;
  std::string path;  // kind == "file"

  std::string display_name() const;
};

struct ScanConfig {
  std::vector<int> dims = {2, 3};
  std::vector<double> a_values;  // defaults to 0.1..0.9 step 0.1
};

struct ExperimentConfig {
  std::vector<ModelConfig> models;
  int k_max = 6;
  std::vector<double> kappa = {0.5, 0.1};
  std::string method = "auto";
  int coarea_samples = 25;
  int exact_cap = 12;  // vertex cap for enumeration-backed checks (h1 cap is 16)
  ScanConfig scan;
  bool run_scan = true;
  std::uint64_t seed = 1;
  std::string out_dir = "reports";

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_json_file(const std::string& path);
  nlohmann::json to_json() const;
};

// "circle:a=<v>,n=<int>", "torus:dim=<d>,a=<v>,counts=<i>x<i>[,...]" or
// "torus:dim=<d>,a=<v>,ppu=<v>", or a graph file path (optionally "file:<p>").
ModelConfig parse_model_string(const std::string& text);
MeasuredGraph model_graph(const ModelConfig& mc);
MeasuredGraph graph_from_model_string(const std::string& text);

// lambda_k / lambda_1 <= (16e/(e-1))^2 k^2.
InequalityReport ratio_bound_check(const std::vector<double>& eigenvalues, int k);

struct ScanRow {
  int dim = 0;
  double a = 0.0;
  int k = 0;
  double ratio = 0.0;
  double lower = 0.0;
  bool pass = false;
};

std::vector<ScanRow> optimality_scan(const std::vector<int>& dims,
                                     const std::vector<double>& a_values);

struct WeylFit {
  bool valid = false;
  double exponent = 0.0;  // log-log slope over the upper half of the spectrum
  double expected = 0.0;  // 2/dim
  double coefficient = 0.0;
  int k_lo = 0;
  int k_hi = 0;
  std::string note;
};

// Least-squares fit of log lambda_k against log k over the upper half of the
// supplied spectrum; needs at least 20 positive eigenvalues.
WeylFit weyl_diagnostic(const std::vector<double>& eigenvalues, int dim);

struct SuiteResult {
  std::vector<InequalityReport> reports;
  int fail_count = 0;   // FAIL rows
  int error_count = 0;  // ERROR rows
  std::string csv;      // summary table, fixed column set
};

// Runs every check on every configured model, deterministically; one CSV
// summary plus one JSON report per check via write_suite_outputs.
SuiteResult run_suite(const ExperimentConfig& cfg);
void write_suite_outputs(const SuiteResult& result, const std::string& out_dir);

}  // namespace speclab
