#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "speclab/graph.hpp"

namespace speclab::detail {

// Multi-source Dijkstra. Edge cost is `ell` when use_lengths, else one hop.
// Unreachable vertices keep +infinity.
inline std::vector<double> distances_from(const MeasuredGraph& g, const std::vector<int>& sources,
                                          bool use_lengths) {
  const int n = g.vertex_count();
  std::vector<double> dist(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int s : sources) {
    if (s < 0 || s >= n) throw Error(ErrorCode::InvalidArgument, "source out of range");
    if (dist[static_cast<size_t>(s)] > 0.0) {
      dist[static_cast<size_t>(s)] = 0.0;
      heap.emplace(0.0, s);
    }
  }
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(v)]) continue;
    for (const auto& [u, ei] : g.adjacency(v)) {
      const Edge& e = g.edges()[static_cast<size_t>(ei)];
      const double cost = use_lengths ? e.ell : 1.0;
      const double nd = d + cost;
      if (nd < dist[static_cast<size_t>(u)]) {
        dist[static_cast<size_t>(u)] = nd;
        heap.emplace(nd, u);
      }
    }
  }
  return dist;
}

}  // namespace speclab::detail
