#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "speclab/isoperimetry.hpp"
#include "speclab/model_spaces.hpp"
#include "speclab/spectra.hpp"
#include "support.hpp"

using namespace speclab;

namespace {

// Independent exact h1: enumerate every bipartition (sets containing vertex 0)
// and take the worse conductance of the two sides.
double h1_by_enumeration(const MeasuredGraph& g) {
  const int n = g.vertex_count();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<std::uint8_t> members(static_cast<size_t>(n), 0);
    members[0] = 1;
    for (int v = 1; v < n; ++v)
      if (mask & (1u << (v - 1))) members[static_cast<size_t>(v)] = 1;
    std::vector<std::uint8_t> other(static_cast<size_t>(n));
    bool full = true;
    for (int v = 0; v < n; ++v) {
      other[static_cast<size_t>(v)] = members[static_cast<size_t>(v)] ? 0 : 1;
      if (!members[static_cast<size_t>(v)]) full = false;
    }
    if (full) continue;
    best = std::min(best, std::max(conductance(g, members), conductance(g, other)));
  }
  return best;
}

}  // namespace

TEST_CASE("sweep over superlevel sets finds the best cut") {
  const MeasuredGraph g = testsupport::c4();

  const CutCertificate plateau = sweep_phi(g, {1.0, 1.0, 0.0, 0.0});
  CHECK(plateau.phi == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(plateau.threshold == 0.0);
  CHECK(plateau.members == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(plateau.mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(plateau.boundary == doctest::Approx(2.0).epsilon(1e-12));

  // {f > 0} has conductance 4; the smaller set {f > 1} has conductance 8.
  const CutCertificate spike = sweep_phi(g, {3.0, 1.0, 0.0, 0.0});
  CHECK(spike.phi == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(spike.members == std::vector<std::uint8_t>{1, 1, 0, 0});

  // Strictly positive functions admit the full set, which has zero boundary.
  const CutCertificate full = sweep_phi(g, {1.0, 2.0, 3.0, 4.0});
  CHECK(full.phi == 0.0);
  CHECK(full.mass == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(sweep_phi(g, {-1.0, 0.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(sweep_phi(g, {0.0, 0.0, 0.0, 0.0}), Error);
}

TEST_CASE("sweep result is never better than any superlevel cut it saw") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 8);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    const VertexFunction f = testsupport::random_function(rng, n, /*nonnegative=*/true);
    if (*std::max_element(f.begin(), f.end()) <= 0.0) continue;
    const CutCertificate best = sweep_phi(g, f);
    // Recompute phi for the returned certificate from scratch.
    CHECK(best.phi == doctest::Approx(conductance(g, best.members)).epsilon(1e-12));
    // Check optimality against a brute-force scan over the same threshold family.
    std::vector<double> values(f.begin(), f.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    double brute = std::numeric_limits<double>::infinity();
    for (double t : values) {
      const std::vector<std::uint8_t> s = superlevel_set(f, t);
      double mass = 0.0;
      for (int v = 0; v < n; ++v)
        if (s[static_cast<size_t>(v)]) mass += g.mu(v);
      if (mass > 0.0) brute = std::min(brute, conductance(g, s));
    }
    if (*std::min_element(f.begin(), f.end()) > 0.0)
      brute = std::min(brute, 0.0);  // the full set at t below min f
    CHECK(best.phi == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("exact h1 on small closed forms") {
  CHECK(h1_exact(testsupport::c4()).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(h1_exact(testsupport::k2()).value == doctest::Approx(2.0).epsilon(1e-12));

  // Circle with N points: the best bipartition is an arc of floor(N/2) points,
  // so h1 = 2N / (a floor(N/2)).
  const MeasuredGraph even = circle_graph(1.0, 8);
  CHECK(h1_exact(even).value == doctest::Approx(4.0).epsilon(1e-12));
  const MeasuredGraph odd = circle_graph(1.0, 9);
  CHECK(h1_exact(odd).value == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("exact h1 agrees with direct enumeration") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    const MultiwayCut cut = h1_exact(g);
    CHECK(cut.value == doctest::Approx(h1_by_enumeration(g)).epsilon(1e-12));
    REQUIRE(cut.sets.size() == 2);
    // The two sides partition the vertex set.
    for (int v = 0; v < n; ++v)
      CHECK(cut.sets[0].members[static_cast<size_t>(v)] +
                cut.sets[1].members[static_cast<size_t>(v)] ==
            1);
    CHECK(cut.value ==
          doctest::Approx(std::max(cut.sets[0].phi, cut.sets[1].phi)).epsilon(1e-12));
  }
}

TEST_CASE("two sided sweep upper bounds exact h1") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    const Spectrum s = compute_spectrum(g, 1);
    const double upper = h1_sweep_upper(g, s.eigenfunctions[1]);
    const double exact = h1_exact(g).value;
    CHECK(upper >= exact - 1e-9 * std::max(1.0, exact));
  }

  // On even circles the sweep finds the optimal half/half split.
  for (int n : {8, 16, 32}) {
    const MeasuredGraph g = circle_graph(1.0, n);
    const Spectrum s = compute_spectrum(g, 1);
    CutCertificate cut;
    const double upper = h1_sweep_upper(g, s.eigenfunctions[1], &cut);
    CHECK(upper == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(cut.mass == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("multiway brute force on small closed forms") {
  // Three disjoint sets on the four-cycle force two singletons (phi = 8).
  const MultiwayCut c4h2 = hk_bruteforce(testsupport::c4(), 2);
  CHECK(c4h2.value == doctest::Approx(8.0).epsilon(1e-12));
  REQUIRE(c4h2.sets.size() == 3);

  // Four singletons on K4: boundary 3, mass 1/4.
  const MultiwayCut k4h3 = hk_bruteforce(testsupport::k4(), 3);
  CHECK(k4h3.value == doctest::Approx(12.0).epsilon(1e-12));
  REQUIRE(k4h3.sets.size() == 4);

  // k = 1 reduces to the bipartition optimum.
  const MultiwayCut c4h1 = hk_bruteforce(testsupport::c4(), 1);
  CHECK(c4h1.value == doctest::Approx(h1_exact(testsupport::c4()).value).epsilon(1e-12));
}

TEST_CASE("multiway constants are monotone in k") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 4);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    double prev = 0.0;
    for (int k = 1; k <= std::min(3, n - 1); ++k) {
      const double hk = hk_bruteforce(g, k).value;
      CHECK(hk >= prev - 1e-12);
      prev = hk;
    }
  }
}

TEST_CASE("spectral heuristic returns a feasible partition above the optimum") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 6);
    const MeasuredGraph g = testsupport::random_graph(rng, n, n / 2);
    const int k = 1 + static_cast<int>(rng() % 2);
    const Spectrum s = compute_spectrum(g, std::min(k + 1, n - 1));
    const MultiwayCut heur = hk_spectral_heuristic(g, k, s);
    REQUIRE(heur.sets.size() == static_cast<size_t>(k) + 1);

    // Feasibility: disjoint, nonempty, phi recomputed from members.
    std::vector<int> owner(static_cast<size_t>(n), -1);
    double max_phi = 0.0;
    for (size_t i = 0; i < heur.sets.size(); ++i) {
      bool nonempty = false;
      for (int v = 0; v < n; ++v)
        if (heur.sets[i].members[static_cast<size_t>(v)]) {
          CHECK(owner[static_cast<size_t>(v)] == -1);
          owner[static_cast<size_t>(v)] = static_cast<int>(i);
          nonempty = true;
        }
      CHECK(nonempty);
      max_phi = std::max(max_phi, conductance(g, heur.sets[i].members));
    }
    CHECK(heur.value == doctest::Approx(max_phi).epsilon(1e-12));

    // Never below the exact optimum.
    const double exact = hk_bruteforce(g, k).value;
    CHECK(heur.value >= exact - 1e-12);
  }
}

TEST_CASE("heuristic is deterministic") {
  std::mt19937_64 rng(46);
  const MeasuredGraph g = testsupport::random_graph(rng, 12, 6);
  const Spectrum s = compute_spectrum(g, 3);
  const MultiwayCut a = hk_spectral_heuristic(g, 2, s);
  const MultiwayCut b = hk_spectral_heuristic(g, 2, s);
  CHECK(a.value == b.value);
  REQUIRE(a.sets.size() == b.sets.size());
  for (size_t i = 0; i < a.sets.size(); ++i) CHECK(a.sets[i].members == b.sets[i].members);
}

TEST_CASE("distance functions from a partition") {
  const MeasuredGraph g = testsupport::c4();
  const std::vector<std::vector<std::uint8_t>> sets{{1, 1, 0, 0}, {0, 0, 1, 1}};
  const std::vector<VertexFunction> fns = disjoint_functions_from_partition(g, sets);
  REQUIRE(fns.size() == 2);
  // Every member of a half-cycle touches the complement, so the normalized
  // distance is the plain indicator.
  CHECK(fns[0] == VertexFunction{1.0, 1.0, 0.0, 0.0});
  CHECK(fns[1] == VertexFunction{0.0, 0.0, 1.0, 1.0});
  CHECK(rayleigh_quotient(g, fns[0]) == doctest::Approx(4.0).epsilon(1e-12));

  // Interior vertices sit farther from the complement than boundary ones.
  const MeasuredGraph circle = circle_graph(1.0, 8);
  const std::vector<std::vector<std::uint8_t>> arc{{1, 1, 1, 1, 0, 0, 0, 0},
                                                   {0, 0, 0, 0, 1, 1, 1, 1}};
  const VertexFunction d = disjoint_functions_from_partition(circle, arc)[0];
  CHECK(d[0] == doctest::Approx(0.5).epsilon(1e-12));  // one step from the cut
  CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-12));  // two steps, normalized max
  CHECK(d[4] == 0.0);

  CHECK_THROWS_AS(
      disjoint_functions_from_partition(g, {{1, 1, 0, 0}, {0, 1, 1, 0}}), Error);
  CHECK_THROWS_AS(disjoint_functions_from_partition(g, {{1, 1, 0, 0}, {0, 0, 0, 0}}), Error);
}

TEST_CASE("buser style lower bounds on the circle") {
  const double a = 2.0 * std::numbers::pi;
  const double h1 = 4.0 / a;

  const InequalityReport buser = buser_ledoux_check(h1, 1.0);
  CHECK(buser.name == "buser-lower");
  CHECK(buser.lhs == doctest::Approx(0.44697673367510304).epsilon(1e-13));
  CHECK(buser.rhs == doctest::Approx(0.6366197723675814).epsilon(1e-13));
  CHECK(buser.status == CheckStatus::Pass);

  // lambda_k = ceil(k/2)^2 on the unit-rate circle.
  for (int k = 1; k <= 6; ++k) {
    const double lam = std::pow((k + 1) / 2, 2.0);
    const InequalityReport hb = higher_buser_ledoux_check(h1, k, lam);
    CHECK(hb.name == "multiway-buser-lower");
    CHECK(hb.status == CheckStatus::Pass);
    CHECK(hb.lhs == doctest::Approx(0.017658948917129345 * std::sqrt(lam) / k).epsilon(1e-13));
  }
}

TEST_CASE("ratio trend row reports the empirical constant") {
  const double h1 = 2.0;
  const InequalityReport r = hk_ratio_check(h1, 1, h1);
  CHECK(r.name == "multiway-ratio");
  CHECK(r.status == CheckStatus::Reported);
  CHECK(!r.asserted);
  REQUIRE(r.constants.count("empirical_c") == 1);
  // h1 / (1 * sqrt(log 2) * h1) = 1/sqrt(log 2).
  CHECK(r.constants.at("empirical_c") == doctest::Approx(1.2011224087864498).epsilon(1e-13));
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(hk_bruteforce(testsupport::c4(), 4), Error);  // five sets, four vertices
  CHECK_THROWS_AS(hk_bruteforce(testsupport::c4(), 0), Error);

  std::mt19937_64 rng(47);
  const MeasuredGraph big13 = testsupport::random_graph(rng, 13, 4);
  CHECK_THROWS_AS(hk_bruteforce(big13, 2), Error);  // enumeration capped at 12

  const MeasuredGraph big17 = testsupport::random_graph(rng, 17, 4);
  CHECK_THROWS_AS(h1_exact(big17), Error);  // bipartitions capped at 16

  bool too_large_code = false;
  try {
    h1_exact(big17);
  } catch (const Error& e) {
    too_large_code = e.code() == ErrorCode::TooLargeForExact;
  }
  CHECK(too_large_code);
}
