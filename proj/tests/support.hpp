#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "speclab/graph.hpp"

namespace testsupport {

// Connected graph: random spanning tree plus extra random edges. Weights and
// perimeter weights are drawn independently so w == p is never silently
// assumed by the code under test.
inline speclab::MeasuredGraph random_graph(std::mt19937_64& rng, int n, int extra_edges,
                                           bool with_lengths = false, bool unit_weights = false) {
  std::uniform_real_distribution<double> uni(0.2, 2.0);
  std::vector<double> mu(static_cast<size_t>(n));
  if (unit_weights) {
    for (double& m : mu) m = 1.0 / n;
  } else {
    double total = 0.0;
    for (double& m : mu) {
      m = uni(rng);
      total += m;
    }
    for (double& m : mu) m /= total;
  }

  std::set<std::pair<int, int>> used;
  std::vector<speclab::Edge> edges;
  auto add_edge = [&](int u, int v) {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    if (!used.insert({u, v}).second) return false;
    const double w = unit_weights ? 1.0 : uni(rng);
    const double p = unit_weights ? 1.0 : uni(rng);
    if (with_lengths)
      edges.emplace_back(u, v, w, p, uni(rng));
    else
      edges.emplace_back(u, v, w, p);
    return true;
  };
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    add_edge(pick(rng), v);
  }
  std::uniform_int_distribution<int> pickn(0, n - 1);
  int added = 0, guard = 0;
  while (added < extra_edges && guard++ < 50 * (extra_edges + 1))
    if (add_edge(pickn(rng), pickn(rng))) ++added;
  return speclab::MeasuredGraph::build(n, std::move(mu), std::move(edges));
}

inline speclab::VertexFunction random_function(std::mt19937_64& rng, int n,
                                               bool nonnegative = false) {
  std::uniform_real_distribution<double> uni(nonnegative ? 0.0 : -1.0, 1.0);
  speclab::VertexFunction f(static_cast<size_t>(n));
  for (double& x : f) x = uni(rng);
  return f;
}

// Cycle on four vertices, uniform measure, unit weights.
inline speclab::MeasuredGraph c4() {
  std::vector<speclab::Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}};
  return speclab::MeasuredGraph::build(4, {0.25, 0.25, 0.25, 0.25}, std::move(edges));
}

// Single edge with two equal atoms.
inline speclab::MeasuredGraph k2() {
  std::vector<speclab::Edge> edges{{0, 1, 1.0}};
  return speclab::MeasuredGraph::build(2, {0.5, 0.5}, std::move(edges));
}

// Complete graph on four vertices, uniform measure, unit weights.
inline speclab::MeasuredGraph k4() {
  std::vector<speclab::Edge> edges;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) edges.emplace_back(u, v, 1.0);
  return speclab::MeasuredGraph::build(4, {0.25, 0.25, 0.25, 0.25}, std::move(edges));
}

// Layer-cake evaluation of the total variation: integrates the perimeter of
// superlevel sets over thresholds. Written independently of the library sweep
// so the two can disagree.
inline double layer_cake_tv(const speclab::MeasuredGraph& g, const speclab::VertexFunction& f) {
  std::vector<double> values(f.begin(), f.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  double integral = 0.0;
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    const double t = values[i];  // boundary is constant on [values[i], values[i+1])
    double per = 0.0;
    for (const speclab::Edge& e : g.edges()) {
      const bool in_u = f[static_cast<size_t>(e.u)] > t;
      const bool in_v = f[static_cast<size_t>(e.v)] > t;
      if (in_u != in_v) per += e.p;
    }
    integral += per * (values[i + 1] - values[i]);
  }
  return integral;
}

}  // namespace testsupport
