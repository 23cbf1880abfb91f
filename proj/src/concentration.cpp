#include "speclab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graph_distance.hpp"

namespace speclab {

namespace {

constexpr double kMassSlop = 1e-12;

// |f_u - f_v| <= ell on every edge, with a whisker for rounding. Candidates
// that only just overshoot are rescaled instead of dropped.
bool certify_lipschitz(const MeasuredGraph& g, VertexFunction& f) {
  double worst = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = std::abs(f[static_cast<size_t>(e.u)] - f[static_cast<size_t>(e.v)]);
    if (!(e.ell > 0.0)) return false;
    worst = std::max(worst, d / e.ell);
  }
  if (worst > 1.0 + 1e-6) return false;
  if (worst > 1.0) {
    const double s = worst * (1.0 + 1e-12);
    for (double& x : f) x /= s;
  }
  for (const Edge& e : g.edges()) {
    const double d = std::abs(f[static_cast<size_t>(e.u)] - f[static_cast<size_t>(e.v)]);
    if (d > e.ell * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace

PartialDiameter partial_diameter(const MeasuredGraph& g, const VertexFunction& f, double kappa) {
  check_function(g, f);
  if (!(kappa > 0.0 && kappa < 1.0))
    throw Error(ErrorCode::BadKappa, "kappa must lie strictly between 0 and 1");
  const int n = g.vertex_count();
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) atoms.emplace_back(f[static_cast<size_t>(v)], g.mu(v));
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i)
    prefix[static_cast<size_t>(i) + 1] = prefix[static_cast<size_t>(i)] + atoms[static_cast<size_t>(i)].second;
  const double target = (1.0 - kappa) - kMassSlop;

  PartialDiameter best;
  best.value = std::numeric_limits<double>::infinity();
  int j = 0;
  for (int i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j < n && prefix[static_cast<size_t>(j) + 1] - prefix[static_cast<size_t>(i)] < target)
      ++j;
    if (j >= n) break;
    const double width = atoms[static_cast<size_t>(j)].first - atoms[static_cast<size_t>(i)].first;
    if (width < best.value) {
      best.value = width;
      best.lo = atoms[static_cast<size_t>(i)].first;
      best.hi = atoms[static_cast<size_t>(j)].first;
      best.mass = prefix[static_cast<size_t>(j) + 1] - prefix[static_cast<size_t>(i)];
    }
  }
  return best;
}

ObsDiamEstimate obs_diameter_lower(const MeasuredGraph& g, double kappa, int max_sources) {
  if (!g.has_edge_lengths())
    throw Error(ErrorCode::NoEdgeLengths, "observable diameter needs edge lengths");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw Error(ErrorCode::BadKappa, "kappa must lie strictly between 0 and 1");
  const int n = g.vertex_count();

  ObsDiamEstimate best;
  best.value = -1.0;
  auto consider = [&](VertexFunction f, const std::string& kind) {
    if (!certify_lipschitz(g, f)) return;
    ++best.candidates;
    const PartialDiameter pd = partial_diameter(g, f, kappa);
    if (pd.value > best.value) {
      best.value = pd.value;
      best.witness = std::move(f);
      best.witness_kind = kind;
      best.window = pd;
    }
  };

  // Distance functions from farthest-point-sampled sources.
  std::vector<double> nearest(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
  int source = 0;
  const int rounds = std::min(std::max(max_sources, 1), n);
  for (int r = 0; r < rounds; ++r) {
    const std::vector<double> dist = detail::distances_from(g, {source}, true);
    consider(dist, "distance:" + std::to_string(source));
    int next = -1;
    double far = -1.0;
    for (int v = 0; v < n; ++v) {
      nearest[static_cast<size_t>(v)] = std::min(nearest[static_cast<size_t>(v)], dist[static_cast<size_t>(v)]);
      if (nearest[static_cast<size_t>(v)] > far) {
        far = nearest[static_cast<size_t>(v)];
        next = v;
      }
    }
    if (far <= 0.0) break;  // every vertex is a chosen source already
    source = next;
  }

  // Wrapped coordinates on model grids.
  if (g.model()) {
    const ModelInfo& info = *g.model();
    std::vector<long long> stride(info.counts.size(), 1);
    for (int i = static_cast<int>(info.counts.size()) - 2; i >= 0; --i)
      stride[static_cast<size_t>(i)] =
          stride[static_cast<size_t>(i + 1)] * info.counts[static_cast<size_t>(i + 1)];
    for (size_t d = 0; d < info.counts.size(); ++d) {
      const double len = info.sides[d];
      const double h = len / info.counts[d];
      VertexFunction f(static_cast<size_t>(n), 0.0);
      for (int v = 0; v < n; ++v) {
        const long long idx = (v / stride[d]) % info.counts[d];
        const double pos = static_cast<double>(idx) * h;
        f[static_cast<size_t>(v)] = std::min(pos, len - pos);
      }
      consider(std::move(f), "coordinate:" + std::to_string(d));
    }
  }

  if (best.value < 0.0)
    throw Error(ErrorCode::DegenerateFunction, "no candidate observable survived certification");
  return best;
}

InequalityReport cheng_dimension_free_check(double obs_lower, int k, double kappa,
                                            double lambda_k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw Error(ErrorCode::BadKappa, "kappa must lie strictly between 0 and 1");
  if (!(lambda_k > 0.0) || !std::isfinite(lambda_k))
    throw Error(ErrorCode::InvalidArgument, "lambda_k must be positive and finite");
  InequalityReport r;
  r.name = "obsdiam-bound";
  r.k = k;
  r.lhs = obs_lower;
  r.rhs = constants::obsdiam_factor() * k * std::log(2.0 / kappa) / std::sqrt(lambda_k);
  r.constants["factor"] = constants::obsdiam_factor();
  r.constants["kappa"] = kappa;
  r.constants["lambda_k"] = lambda_k;
  r.finalize();
  return r;
}

InequalityReport cheng_classical_check(double diameter, int dim, int k, double lambda_k) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be at least 1");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (!(lambda_k > 0.0) || !std::isfinite(lambda_k))
    throw Error(ErrorCode::InvalidArgument, "lambda_k must be positive and finite");
  InequalityReport r;
  r.name = "diameter-bound";
  r.k = k;
  r.lhs = diameter;
  const double factor = std::sqrt(2.0 * dim * (dim + 4.0));
  r.rhs = factor * k / std::sqrt(lambda_k);
  r.constants["factor"] = factor;
  r.constants["dim"] = static_cast<double>(dim);
  r.constants["lambda_k"] = lambda_k;
  r.finalize();
  return r;
}

double model_diameter(const ModelInfo& info) {
  double sq = 0.0;
  for (double s : info.sides) sq += s * s;
  return 0.5 * std::sqrt(sq);
}

}  // namespace speclab
