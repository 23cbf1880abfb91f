#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>

#include "doctest.h"
#include "speclab/graph.hpp"
#include "support.hpp"

using namespace speclab;

TEST_CASE("functionals on the four-cycle") {
  const MeasuredGraph g = testsupport::c4();

  const VertexFunction alternating{1.0, 0.0, 1.0, 0.0};
  CHECK(dirichlet_energy(g, alternating) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(rayleigh_quotient(g, alternating) == doctest::Approx(8.0).epsilon(1e-14));

  const VertexFunction plateau{1.0, 1.0, 0.0, 0.0};
  CHECK(dirichlet_energy(g, plateau) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rayleigh_quotient(g, plateau) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(total_variation(g, plateau) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(l1_norm(g, plateau) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(l2_norm_sq(g, plateau) == doctest::Approx(0.5).epsilon(1e-14));

  // Worked example with three distinct positive values.
  const VertexFunction ramp{3.0, 1.0, 0.0, 0.0};
  CHECK(total_variation(g, ramp) == doctest::Approx(6.0).epsilon(1e-14));

  const std::vector<std::uint8_t> half{1, 1, 0, 0};
  CHECK(boundary_measure(g, half) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(conductance(g, half) == doctest::Approx(4.0).epsilon(1e-14));
  const std::vector<std::uint8_t> corner{1, 0, 0, 0};
  CHECK(conductance(g, corner) == doctest::Approx(8.0).epsilon(1e-14));
  const std::vector<std::uint8_t> full{1, 1, 1, 1};
  CHECK(conductance(g, full) == doctest::Approx(0.0));
  const std::vector<std::uint8_t> empty{0, 0, 0, 0};
  CHECK_THROWS_AS(conductance(g, empty), Error);
}

TEST_CASE("superlevel sets and cut certificates") {
  const MeasuredGraph g = testsupport::c4();
  const VertexFunction f{3.0, 1.0, 0.0, 0.0};
  const auto s1 = superlevel_set(f, 0.5);
  CHECK(s1 == std::vector<std::uint8_t>{1, 1, 0, 0});
  const auto s2 = superlevel_set(f, 1.0);  // strict inequality
  CHECK(s2 == std::vector<std::uint8_t>{1, 0, 0, 0});

  const CutCertificate c = make_cut(g, s1, 0.5);
  CHECK(c.mass == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.boundary == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.phi == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c.threshold == 0.5);
}

TEST_CASE("builder rejects malformed graphs") {
  using Edges = std::vector<Edge>;

  auto code_of = [](auto&& fn) -> std::optional<ErrorCode> {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;  // no throw: never equal to any expected code
  };

  CHECK(code_of([] {
          MeasuredGraph::build(2, {0.5, -0.5}, Edges{{0, 1, 1.0}});
        }) == ErrorCode::NonpositiveMeasure);
  CHECK(code_of([] {
          MeasuredGraph::build(2, {0.7, 0.7}, Edges{{0, 1, 1.0}});
        }) == ErrorCode::NonpositiveMeasure);
  CHECK(code_of([] {
          MeasuredGraph::build(2, {0.5, 0.5}, Edges{{0, 1, -1.0}});
        }) == ErrorCode::NegativeWeight);
  CHECK(code_of([] {
          MeasuredGraph::build(2, {0.5, 0.5}, Edges{{0, 1, 1.0}, {1, 0, 2.0}});
        }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] {
          MeasuredGraph::build(2, {0.5, 0.5}, Edges{{0, 0, 1.0}});
        }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] {
          MeasuredGraph::build(2, {0.5, 0.5}, Edges{{0, 2, 1.0}});
        }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] {
          MeasuredGraph::build(3, {0.4, 0.3, 0.3}, Edges{{0, 1, 1.0}});
        }) == ErrorCode::DisconnectedGraph);
  // Zero-weight edges do not carry connectivity.
  CHECK(code_of([] {
          MeasuredGraph::build(3, {0.4, 0.3, 0.3}, Edges{{0, 1, 1.0}, {1, 2, 0.0}});
        }) == ErrorCode::DisconnectedGraph);
}

TEST_CASE("rayleigh quotient rejects the zero function") {
  const MeasuredGraph g = testsupport::c4();
  CHECK_THROWS_AS(rayleigh_quotient(g, VertexFunction{0, 0, 0, 0}), Error);
}

TEST_CASE("co-area identity on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 20);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    const VertexFunction f = testsupport::random_function(rng, n);
    const double tv = total_variation(g, f);
    const double integral = testsupport::layer_cake_tv(g, f);
    CHECK(std::abs(tv - integral) <= 1e-10 * std::max(1.0, tv));
  }
}

TEST_CASE("layer-cake identity for the weighted l1 norm") {
  // For f >= 0: sum_v mu_v f_v equals the integral of mu({f > t}) over t.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 12);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    const VertexFunction f = testsupport::random_function(rng, n, /*nonnegative=*/true);

    std::vector<double> values(f.begin(), f.end());
    values.push_back(0.0);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    double integral = 0.0;
    for (size_t i = 0; i + 1 < values.size(); ++i) {
      double mass = 0.0;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (f[static_cast<size_t>(v)] > values[i]) mass += g.mu(v);
      integral += mass * (values[i + 1] - values[i]);
    }
    CHECK(l1_norm(g, f) == doctest::Approx(integral).epsilon(1e-12));
  }
}

TEST_CASE("graph text round trip preserves every double") {
  std::mt19937_64 rng(13);
  const MeasuredGraph g = testsupport::random_graph(rng, 9, 5, /*with_lengths=*/true);
  const MeasuredGraph h = graph_from_string(graph_to_string(g));
  REQUIRE(h.vertex_count() == g.vertex_count());
  REQUIRE(h.edge_count() == g.edge_count());
  // The serialized mu values are exact, but construction re-normalizes the
  // measure, so the reload may differ in the final bit.
  for (int v = 0; v < g.vertex_count(); ++v)
    CHECK(h.mu(v) == doctest::Approx(g.mu(v)).epsilon(1e-15));
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& a = g.edges()[static_cast<size_t>(i)];
    const Edge& b = h.edges()[static_cast<size_t>(i)];
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.w == b.w);
    CHECK(a.p == b.p);
    CHECK(a.has_ell == b.has_ell);
    if (a.has_ell) CHECK(a.ell == b.ell);
  }
}

TEST_CASE("graph file io") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "speclab_test_graph.txt";
  std::mt19937_64 rng(14);
  const MeasuredGraph g = testsupport::random_graph(rng, 6, 3, /*with_lengths=*/true);
  write_graph_file(g, path.string());
  const MeasuredGraph h = read_graph_file(path.string());
  CHECK(h.vertex_count() == 6);
  CHECK(graph_to_string(h) == graph_to_string(g));
  fs::remove(path);

  CHECK_THROWS_AS(read_graph_file((fs::temp_directory_path() / "no_such_graph.txt").string()),
                  Error);
}
