#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"
#include "speclab/harness.hpp"
#include "speclab/model_spaces.hpp"
#include "support.hpp"

using namespace speclab;

namespace {

std::filesystem::path temp_dir(const char* tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   (std::string("speclab_harness_") + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("named constants match their closed forms") {
  CHECK(constants::improved_cheeger() == doctest::Approx(11.313708498984761).epsilon(1e-15));
  CHECK(constants::ratio_bound() == doctest::Approx(640.67847707574242).epsilon(1e-15));
  CHECK(constants::buser_ledoux() == doctest::Approx(0.44697673367510304).epsilon(1e-15));
  CHECK(constants::higher_buser() == doctest::Approx(0.017658948917129345).epsilon(1e-15));
  CHECK(constants::obsdiam_factor() == 152.0);
}

TEST_CASE("uniform pass rule") {
  CHECK(InequalityReport::passes(1.0, 1.0));
  CHECK(InequalityReport::passes(0.0, 0.0));
  CHECK(InequalityReport::passes(1.0 + 0.5e-9, 1.0));   // inside the whisker
  CHECK(!InequalityReport::passes(1.0 + 2e-9, 1.0));    // outside
  CHECK(InequalityReport::passes(-1.0, -1.0 + 1e-12));
  CHECK(!InequalityReport::passes(2.0, 1.0));
  // Scale-relative: rhs of 1e6 tolerates an absolute 1e-3 overshoot.
  CHECK(InequalityReport::passes(1e6 + 1e-4, 1e6));
}

TEST_CASE("model strings parse and print") {
  const ModelConfig circle = parse_model_string("circle:a=6.2832,n=256");
  CHECK(circle.kind == "circle");
  CHECK(circle.a == doctest::Approx(6.2832).epsilon(1e-15));
  REQUIRE(circle.counts.size() == 1);
  CHECK(circle.counts[0] == 256);
  CHECK(circle.display_name() == "circle(a=6.2832;n=256)");

  const ModelConfig torus = parse_model_string("torus:dim=2,a=0.5,counts=16x64");
  CHECK(torus.kind == "torus");
  CHECK(torus.dim == 2);
  REQUIRE(torus.counts.size() == 2);
  CHECK(torus.counts[0] == 16);
  CHECK(torus.counts[1] == 64);
  CHECK(torus.display_name() == "torus(dim=2;a=0.5;counts=16x64)");

  const ModelConfig ppu = parse_model_string("torus:dim=3,a=0.4,ppu=12");
  CHECK(ppu.dim == 3);
  CHECK(ppu.points_per_unit == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(ppu.counts.empty());

  const ModelConfig file = parse_model_string("file:data/g.graph");
  CHECK(file.kind == "file");
  CHECK(file.path == "data/g.graph");
  // A bare path (no scheme) is a file too.
  CHECK(parse_model_string("data/g.graph").kind == "file");

  CHECK_THROWS_AS(parse_model_string("circle:a=1.0"), Error);            // n missing
  CHECK_THROWS_AS(graph_from_model_string("circle:a=1.0,n=0"), Error);   // bad n
  CHECK_THROWS_AS(parse_model_string("circle:a=1.0,n=8,z=2"), Error);    // unknown key
  CHECK_THROWS_AS(parse_model_string("torus:dim=3,a=0.5,counts=4x4"), Error);  // dim mismatch
  CHECK_THROWS_AS(parse_model_string("torus:dim=2,a=0.5"), Error);       // no resolution
  CHECK_THROWS_AS(parse_model_string(""), Error);
}

TEST_CASE("model graphs are built from configs") {
  const MeasuredGraph circle = graph_from_model_string("circle:a=1.0,n=16");
  CHECK(circle.vertex_count() == 16);
  REQUIRE(circle.model().has_value());
  CHECK(circle.model()->dim == 1);

  const MeasuredGraph torus = graph_from_model_string("torus:dim=2,a=0.5,counts=4x8");
  CHECK(torus.vertex_count() == 32);
  REQUIRE(torus.model().has_value());
  CHECK(torus.model()->dim == 2);

  // points_per_unit picks resolutions proportional to the sides.
  const MeasuredGraph ppu = graph_from_model_string("torus:dim=2,a=0.5,ppu=8");
  REQUIRE(ppu.model().has_value());
  REQUIRE(ppu.model()->counts.size() == 2);
  CHECK(ppu.model()->counts[0] >= 3);
  CHECK(ppu.model()->counts[1] > ppu.model()->counts[0]);  // longer side, more points
}

TEST_CASE("ratio bound rows on exact spectra") {
  const std::vector<double> ev = circle_exact_spectrum(2.0 * std::numbers::pi, 10);
  const InequalityReport r = ratio_bound_check(ev, 9);
  CHECK(r.name == "eigenvalue-ratio");
  CHECK(r.k == 9);
  CHECK(r.lhs == doctest::Approx(25.0).epsilon(1e-12));  // lambda_9 / lambda_1
  CHECK(r.rhs == doctest::Approx(640.67847707574242 * 81.0).epsilon(1e-12));
  CHECK(r.status == CheckStatus::Pass);

  CHECK_THROWS_AS(ratio_bound_check(ev, 0), Error);
  CHECK_THROWS_AS(ratio_bound_check(ev, 99), Error);
  const std::vector<double> degenerate{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(ratio_bound_check(degenerate, 2), Error);
}

TEST_CASE("optimality scan reproduces the witness table") {
  const std::vector<ScanRow> rows = optimality_scan({2}, {0.5, 0.1});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].dim == 2);
  CHECK(rows[0].a == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rows[0].k == 9);
  CHECK(rows[0].ratio == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(rows[0].lower == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(rows[0].pass);
  CHECK(rows[1].k == 201);
  CHECK(rows[1].ratio == doctest::Approx(1e4).epsilon(1e-12));
  CHECK(rows[1].lower == doctest::Approx(4489.0).epsilon(1e-12));
  CHECK(rows[1].pass);

  // Default grid: dims x nine aspect ratios.
  const std::vector<ScanRow> grid = optimality_scan({2, 3}, {});
  CHECK(grid.size() == 18);
  for (const ScanRow& row : grid) CHECK(row.pass);
}

TEST_CASE("weyl fit recovers the growth exponent") {
  const std::vector<double> circle = circle_exact_spectrum(2.0 * std::numbers::pi, 48);
  const WeylFit f1 = weyl_diagnostic(circle, 1);
  REQUIRE(f1.valid);
  CHECK(f1.expected == 2.0);
  CHECK(f1.exponent == doctest::Approx(2.0).epsilon(0.08));
  CHECK(f1.k_lo >= 1);
  CHECK(f1.k_hi > f1.k_lo);

  const std::vector<double> torus = torus_exact_spectrum(2, 0.5, 48);
  const WeylFit f2 = weyl_diagnostic(torus, 2);
  REQUIRE(f2.valid);
  CHECK(f2.expected == 1.0);
  CHECK(f2.exponent == doctest::Approx(1.0).epsilon(0.25));

  const WeylFit shortfit = weyl_diagnostic(circle_exact_spectrum(1.0, 10), 1);
  CHECK(!shortfit.valid);
  CHECK(!shortfit.note.empty());
}

TEST_CASE("experiment config round trips through json") {
  const nlohmann::json j = {
      {"models",
       {{{"name", "c"}, {"kind", "circle"}, {"a", 1.0}, {"counts", {32}}},
        "torus:dim=2,a=0.5,counts=3x4"}},
      {"k_max", 4},
      {"kappa", {0.3, 0.1}},
      {"method", "dense"},
      {"coarea_samples", 7},
      {"exact_cap", 10},
      {"scan", {{"dims", {2}}, {"a_values", {0.5}}}},
      {"run_scan", true},
      {"seed", 9},
      {"out_dir", "reports/test"}};
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  REQUIRE(cfg.models.size() == 2);
  CHECK(cfg.models[0].name == "c");
  CHECK(cfg.models[1].kind == "torus");
  CHECK(cfg.models[1].counts == std::vector<int>{3, 4});
  CHECK(cfg.k_max == 4);
  CHECK(cfg.kappa == std::vector<double>{0.3, 0.1});
  CHECK(cfg.method == "dense");
  CHECK(cfg.coarea_samples == 7);
  CHECK(cfg.exact_cap == 10);
  CHECK(cfg.scan.dims == std::vector<int>{2});
  CHECK(cfg.seed == 9);

  const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("experiment config rejects malformed input") {
  const nlohmann::json base = {{"models", {"circle:a=1.0,n=16"}}};
  CHECK_NOTHROW(ExperimentConfig::from_json(base));

  nlohmann::json bad = base;
  bad["surprise"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["k_max"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["kappa"] = {1.5};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["method"] = "magic";
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["exact_cap"] = 13;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["scan"] = {{"dims", {1}}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["scan"] = {{"unknown", 1}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);

  bad = base;
  bad["models"] = nlohmann::json::array();
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), Error);
}

TEST_CASE("suite runs green and deterministically on a small config") {
  ExperimentConfig cfg;
  ModelConfig circle;
  circle.kind = "circle";
  circle.a = 2.0 * std::numbers::pi;
  circle.counts = {32};
  ModelConfig torus;
  torus.kind = "torus";
  torus.dim = 2;
  torus.a = 0.5;
  torus.counts = {3, 4};
  cfg.models = {circle, torus};
  cfg.k_max = 3;
  cfg.kappa = {0.3};
  cfg.method = "dense";
  cfg.coarea_samples = 5;
  cfg.exact_cap = 12;
  cfg.scan.dims = {2};
  cfg.scan.a_values = {0.5};
  cfg.run_scan = true;
  cfg.seed = 7;

  const SuiteResult run1 = run_suite(cfg);
  CHECK(run1.fail_count == 0);
  CHECK(run1.error_count == 0);
  CHECK(run1.csv.rfind(csv_header(), 0) == 0);

  std::set<std::string> seen;
  for (const InequalityReport& r : run1.reports) {
    seen.insert(r.name);
    CHECK(r.status != CheckStatus::Fail);
    CHECK(r.status != CheckStatus::Error);
  }
  for (const char* name :
       {"coarea-identity", "eigenfunction-split", "improved-cheeger", "step-approximation",
        "eigenvalue-ratio", "buser-lower", "multiway-buser-lower", "multiway-ratio",
        "multiway-functional", "obsdiam-bound", "diameter-bound", "ratio-optimality",
        "weyl-exponent"}) {
    INFO("missing check: ", name);
    CHECK(seen.count(name) == 1);
  }

  const SuiteResult run2 = run_suite(cfg);
  CHECK(run1.csv == run2.csv);  // bitwise deterministic
}

TEST_CASE("suite skips model-only checks for data graphs") {
  // A plain file graph has no exact spectrum, no geometric diameter and, here,
  // no edge lengths.
  std::mt19937_64 rng(61);
  const MeasuredGraph g = testsupport::random_graph(rng, 10, 5);
  const auto dir = temp_dir("filegraph");
  const std::string path = (dir / "g.graph").string();
  write_graph_file(g, path);

  ExperimentConfig cfg;
  ModelConfig file;
  file.kind = "file";
  file.path = path;
  cfg.models = {file};
  cfg.k_max = 2;
  cfg.kappa = {0.3};
  cfg.method = "dense";
  cfg.coarea_samples = 3;
  cfg.run_scan = false;

  const SuiteResult res = run_suite(cfg);
  CHECK(res.fail_count == 0);
  CHECK(res.error_count == 0);

  bool ratio_reported = false, buser_skipped = false, obs_skipped = false, diam_skipped = false;
  for (const InequalityReport& r : res.reports) {
    if (r.name == "eigenvalue-ratio" && r.status == CheckStatus::Reported) ratio_reported = true;
    if (r.name == "buser-lower" && r.status == CheckStatus::Skip) buser_skipped = true;
    if (r.name == "obsdiam-bound" && r.status == CheckStatus::Skip) obs_skipped = true;
    if (r.name == "diameter-bound" && r.status == CheckStatus::Skip) diam_skipped = true;
  }
  CHECK(ratio_reported);
  CHECK(buser_skipped);
  CHECK(obs_skipped);
  CHECK(diam_skipped);

  std::filesystem::remove_all(dir);
}

TEST_CASE("suite outputs land in the configured directory") {
  ExperimentConfig cfg;
  ModelConfig circle;
  circle.kind = "circle";
  circle.a = 1.0;
  circle.counts = {16};
  cfg.models = {circle};
  cfg.k_max = 2;
  cfg.kappa = {0.3};
  cfg.method = "dense";
  cfg.coarea_samples = 3;
  cfg.run_scan = false;

  const auto dir = temp_dir("outputs");
  const std::string out = (dir / "reports").string();
  const SuiteResult res = run_suite(cfg);
  write_suite_outputs(res, out);

  std::ifstream csv(std::filesystem::path(out) / "summary.csv", std::ios::binary);
  REQUIRE(csv.good());
  std::stringstream buf;
  buf << csv.rdbuf();
  CHECK(buf.str() == res.csv);

  for (const char* name : {"coarea-identity", "eigenvalue-ratio", "buser-lower"}) {
    const auto path = std::filesystem::path(out) / (std::string(name) + ".json");
    INFO("missing report: ", name);
    REQUIRE(std::filesystem::exists(path));
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    CHECK(j.contains("check"));
    CHECK(j["check"] == name);
    CHECK(j["rows"].is_array());
    CHECK(!j["rows"].empty());
  }
  std::filesystem::remove_all(dir);
}
