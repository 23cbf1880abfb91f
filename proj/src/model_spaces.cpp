#include "speclab/model_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace speclab {

namespace {

void require_aspect(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw Error(ErrorCode::InvalidArgument, "aspect parameter must be positive and finite");
}

double pow_int(double x, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

}  // namespace

std::vector<double> torus_sides(int dim, double a) {
  require_aspect(a);
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (dim == 1) return {a};
  std::vector<double> sides(static_cast<size_t>(dim), a);
  sides.back() = 1.0 / pow_int(a, dim - 1);
  return sides;
}

MeasuredGraph circle_graph(double a, int n_points) {
  require_aspect(a);
  if (n_points < 3)
    throw Error(ErrorCode::BadResolution, "a cycle needs at least 3 points");
  const int n = n_points;
  std::vector<double> mu(static_cast<size_t>(n), 1.0 / n);
  const double w = static_cast<double>(n) / (a * a);
  const double p = 1.0 / a;
  const double ell = a / n;
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n, w, p, ell);
  MeasuredGraph g = MeasuredGraph::build(n, std::move(mu), std::move(edges));
  ModelInfo info;
  info.kind = ModelInfo::Kind::Circle;
  info.dim = 1;
  info.a = a;
  info.sides = {a};
  info.counts = {n};
  g.set_model(std::move(info));
  return g;
}

MeasuredGraph torus_graph(const TorusSpec& spec) {
  require_aspect(spec.a);
  if (spec.dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  const std::vector<double> sides = torus_sides(spec.dim, spec.a);

  std::vector<int> counts = spec.counts;
  if (!counts.empty() && static_cast<int>(counts.size()) != spec.dim)
    throw Error(ErrorCode::InvalidArgument, "counts must have one entry per dimension");
  if (counts.empty()) {
    const double per_unit = std::max(spec.points_per_unit, 8.0);
    counts.resize(static_cast<size_t>(spec.dim));
    for (int i = 0; i < spec.dim; ++i) {
      const double want = per_unit * sides[static_cast<size_t>(i)];
      counts[static_cast<size_t>(i)] = static_cast<int>(std::max(8.0, std::ceil(want)));
    }
  }
  long long total = 1;
  for (int c : counts) {
    if (c < 3) throw Error(ErrorCode::BadResolution, "each dimension needs at least 3 points");
    total *= c;
    if (total > spec.max_vertices)
      throw Error(ErrorCode::TooLarge, "grid exceeds the vertex budget");
  }

  if (spec.dim == 1) {
    MeasuredGraph g = circle_graph(spec.a, counts[0]);
    return g;
  }

  const int n = static_cast<int>(total);
  std::vector<double> h(static_cast<size_t>(spec.dim));
  double density = 1.0;
  for (int i = 0; i < spec.dim; ++i) {
    h[static_cast<size_t>(i)] = sides[static_cast<size_t>(i)] / counts[static_cast<size_t>(i)];
    density /= sides[static_cast<size_t>(i)];
  }
  const double mu0 = 1.0 / static_cast<double>(n);

  // Row-major strides: the last coordinate varies fastest.
  std::vector<long long> stride(static_cast<size_t>(spec.dim), 1);
  for (int i = spec.dim - 2; i >= 0; --i)
    stride[static_cast<size_t>(i)] =
        stride[static_cast<size_t>(i + 1)] * counts[static_cast<size_t>(i + 1)];

  std::vector<double> mu(static_cast<size_t>(n), mu0);
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * static_cast<size_t>(spec.dim));

  std::vector<double> w_dim(static_cast<size_t>(spec.dim)), p_dim(static_cast<size_t>(spec.dim));
  for (int i = 0; i < spec.dim; ++i) {
    w_dim[static_cast<size_t>(i)] =
        mu0 / (h[static_cast<size_t>(i)] * h[static_cast<size_t>(i)]);
    double cross = density;
    for (int j = 0; j < spec.dim; ++j)
      if (j != i) cross *= h[static_cast<size_t>(j)];
    p_dim[static_cast<size_t>(i)] = cross;
  }

  std::vector<int> coord(static_cast<size_t>(spec.dim), 0);
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < spec.dim; ++i) {
      const int ci = coord[static_cast<size_t>(i)];
      const int next = (ci + 1) % counts[static_cast<size_t>(i)];
      const long long u = v + (static_cast<long long>(next) - ci) * stride[static_cast<size_t>(i)];
      edges.emplace_back(v, static_cast<int>(u), w_dim[static_cast<size_t>(i)],
                         p_dim[static_cast<size_t>(i)], h[static_cast<size_t>(i)]);
    }
    for (int i = spec.dim - 1; i >= 0; --i) {
      if (++coord[static_cast<size_t>(i)] < counts[static_cast<size_t>(i)]) break;
      coord[static_cast<size_t>(i)] = 0;
    }
  }

  MeasuredGraph g = MeasuredGraph::build(n, std::move(mu), std::move(edges));
  ModelInfo info;
  info.kind = ModelInfo::Kind::Torus;
  info.dim = spec.dim;
  info.a = spec.a;
  info.sides = sides;
  info.counts = counts;
  g.set_model(std::move(info));
  return g;
}

std::vector<double> circle_exact_spectrum(double a, int k_max) {
  require_aspect(a);
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be nonnegative");
  const double base = 2.0 * std::numbers::pi / a;  // so a = 2*pi gives base == 1 exactly
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(k_max) + 1);
  vals.push_back(0.0);
  for (int m = 1; static_cast<int>(vals.size()) <= k_max; ++m) {
    const double lam = (base * m) * (base * m);
    vals.push_back(lam);
    if (static_cast<int>(vals.size()) <= k_max) vals.push_back(lam);
  }
  vals.resize(static_cast<size_t>(k_max) + 1);
  return vals;
}

std::vector<double> torus_exact_spectrum(int dim, double a, int k_max) {
  require_aspect(a);
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be nonnegative");
  if (dim == 1) return circle_exact_spectrum(a, k_max);

  // Dual lattice steps: 1/L_i per dimension.
  std::vector<double> step(static_cast<size_t>(dim), 1.0 / a);
  step.back() = pow_int(a, dim - 1);

  const size_t want = static_cast<size_t>(k_max) + 1;
  const double step_min = *std::min_element(step.begin(), step.end());
  double radius = step_min * (std::ceil(std::pow(static_cast<double>(want), 1.0 / dim)) + 1.0);

  constexpr long long kEnumCap = 50'000'000;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double r2 = radius * radius;
    std::vector<double> norms;
    long long visited = 0;
    // Depth-first over coordinates, pruning on the partial squared norm.
    std::vector<long long> m(static_cast<size_t>(dim), 0);
    auto recurse = [&](auto&& self, int d, double partial) -> void {
      if (d == dim) {
        norms.push_back(partial);
        return;
      }
      const double s = step[static_cast<size_t>(d)];
      const long long reach = static_cast<long long>(std::floor(std::sqrt(std::max(0.0, r2 - partial)) / s));
      for (long long mi = -reach; mi <= reach; ++mi) {
        const double c = s * static_cast<double>(mi);
        const double next = partial + c * c;
        if (next > r2) continue;
        if (++visited > kEnumCap)
          throw Error(ErrorCode::EnumerationOverflow, "dual lattice enumeration exceeded its cap");
        m[static_cast<size_t>(d)] = mi;
        self(self, d + 1, next);
      }
    };
    recurse(recurse, 0, 0.0);
    std::sort(norms.begin(), norms.end());
    if (norms.size() >= want && norms[want - 1] <= r2) {
      std::vector<double> vals;
      vals.reserve(want);
      const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
      for (size_t i = 0; i < want; ++i) vals.push_back(four_pi_sq * norms[i]);
      return vals;
    }
    radius *= 2.0;
  }
  throw Error(ErrorCode::EnumerationOverflow, "dual lattice ball never certified complete");
}

RatioWitness ratio_witness(int dim, double a) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "the ratio witness needs dimension >= 2");
  if (!(a > 0.0 && a < 1.0))
    throw Error(ErrorCode::InvalidArgument, "the ratio witness needs 0 < a < 1");
  double x = 1.0 / pow_int(a, dim);
  // Snap to the nearest integer when within rounding noise so that, e.g.,
  // a = 0.1 yields floor(100) and not floor(99.999...).
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, x)) x = r;
  const long long m = static_cast<long long>(std::floor(x));
  RatioWitness out;
  out.k = static_cast<int>(2 * m + 1);
  out.ratio = x * x;
  out.lower_bound = (static_cast<double>(out.k) * static_cast<double>(out.k)) / 9.0;
  return out;
}

}  // namespace speclab
