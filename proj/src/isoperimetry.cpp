#include "speclab/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "graph_distance.hpp"
#include "speclab/improved_cheeger.hpp"

namespace speclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> order_by_value_desc(const VertexFunction& f) {
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (f[static_cast<size_t>(a)] != f[static_cast<size_t>(b)])
      return f[static_cast<size_t>(a)] > f[static_cast<size_t>(b)];
    return a < b;
  });
  return order;
}

}  // namespace

CutCertificate sweep_phi(const MeasuredGraph& g, const VertexFunction& f) {
  check_function(g, f);
  for (double x : f)
    if (x < 0.0) throw Error(ErrorCode::NegativeInput, "sweep needs a nonnegative function");
  const int n = g.vertex_count();
  const std::vector<int> order = order_by_value_desc(f);
  if (f[static_cast<size_t>(order[0])] <= 0.0)
    throw Error(ErrorCode::ZeroFunction, "sweep needs a positive value");

  std::vector<std::uint8_t> in_set(static_cast<size_t>(n), 0);
  double mass = 0.0, boundary = 0.0;
  double best_phi = kInf, best_t = 0.0;
  int best_prefix = -1;

  int i = 0;
  while (i < n) {
    const double v = f[static_cast<size_t>(order[static_cast<size_t>(i)])];
    if (v <= 0.0) break;  // thresholds range over [0, max f), so {f = 0} never joins
    for (; i < n && f[static_cast<size_t>(order[static_cast<size_t>(i)])] == v; ++i) {
      const int u = order[static_cast<size_t>(i)];
      in_set[static_cast<size_t>(u)] = 1;
      mass += g.mu(u);
      for (const auto& [nbr, ei] : g.adjacency(u)) {
        const Edge& e = g.edges()[static_cast<size_t>(ei)];
        boundary += in_set[static_cast<size_t>(nbr)] ? -e.p : e.p;
      }
    }
    const double t = (i < n) ? f[static_cast<size_t>(order[static_cast<size_t>(i)])] : 0.0;
    const double phi = boundary / mass;
    if (phi < best_phi) {
      best_phi = phi;
      best_t = t;
      best_prefix = i;
    }
  }

  std::vector<std::uint8_t> members(static_cast<size_t>(n), 0);
  for (int j = 0; j < best_prefix; ++j)
    members[static_cast<size_t>(order[static_cast<size_t>(j)])] = 1;
  return make_cut(g, members, best_t);
}

double h1_sweep_upper(const MeasuredGraph& g, const VertexFunction& f, CutCertificate* cut) {
  check_function(g, f);
  const int n = g.vertex_count();
  const std::vector<int> order = order_by_value_desc(f);
  if (f[static_cast<size_t>(order[0])] == f[static_cast<size_t>(order[static_cast<size_t>(n - 1)])])
    throw Error(ErrorCode::DegenerateFunction, "two-sided sweep needs a non-constant function");

  std::vector<std::uint8_t> in_set(static_cast<size_t>(n), 0);
  double mass = 0.0, boundary = 0.0;
  double best_value = kInf, best_t = 0.0;
  int best_prefix = -1;

  int i = 0;
  while (i < n) {
    const double v = f[static_cast<size_t>(order[static_cast<size_t>(i)])];
    for (; i < n && f[static_cast<size_t>(order[static_cast<size_t>(i)])] == v; ++i) {
      const int u = order[static_cast<size_t>(i)];
      in_set[static_cast<size_t>(u)] = 1;
      mass += g.mu(u);
      for (const auto& [nbr, ei] : g.adjacency(u)) {
        const Edge& e = g.edges()[static_cast<size_t>(ei)];
        boundary += in_set[static_cast<size_t>(nbr)] ? -e.p : e.p;
      }
    }
    if (i >= n) break;  // the complement must stay nonempty
    const double other = 1.0 - mass;
    const double value = boundary / std::min(mass, other);
    if (value < best_value) {
      best_value = value;
      best_t = f[static_cast<size_t>(order[static_cast<size_t>(i)])];
      best_prefix = i;
    }
  }

  std::vector<std::uint8_t> members(static_cast<size_t>(n), 0);
  for (int j = 0; j < best_prefix; ++j)
    members[static_cast<size_t>(order[static_cast<size_t>(j)])] = 1;
  CutCertificate side = make_cut(g, members, best_t);
  std::vector<std::uint8_t> co(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) co[static_cast<size_t>(v)] = members[static_cast<size_t>(v)] ? 0 : 1;
  const CutCertificate other_side = make_cut(g, co, best_t);
  const double value = std::max(side.phi, other_side.phi);
  if (cut) *cut = side;
  return value;
}

MultiwayCut h1_exact(const MeasuredGraph& g) {
  const int n = g.vertex_count();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "needs at least 2 vertices");
  if (n > 16) throw Error(ErrorCode::TooLargeForExact, "bipartition enumeration caps at 16");

  // The optimum over disjoint pairs is attained by a complementary pair, so
  // enumerate subsets with vertex n-1 pinned to the complement.
  const std::uint32_t limit = 1u << (n - 1);
  double best = kInf;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    double m_in = 0.0;
    for (int v = 0; v < n - 1; ++v)
      if (mask & (1u << v)) m_in += g.mu(v);
    double b = 0.0;
    for (const Edge& e : g.edges()) {
      const bool iu = e.u < n - 1 && (mask & (1u << e.u));
      const bool iv = e.v < n - 1 && (mask & (1u << e.v));
      if (iu != iv) b += e.p;
    }
    const double value = b / std::min(m_in, 1.0 - m_in);
    if (value < best) {
      best = value;
      best_mask = mask;
    }
  }

  MultiwayCut out;
  out.value = best;
  std::vector<std::uint8_t> a(static_cast<size_t>(n), 0), bvec(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const bool in_a = v < n - 1 && (best_mask & (1u << v));
    a[static_cast<size_t>(v)] = in_a ? 1 : 0;
    bvec[static_cast<size_t>(v)] = in_a ? 0 : 1;
  }
  out.sets.push_back(make_cut(g, a));
  out.sets.push_back(make_cut(g, bvec));
  if (out.sets[0].phi < out.sets[1].phi) std::swap(out.sets[0], out.sets[1]);
  // value == max phi over the two sides by construction
  out.value = std::max(out.sets[0].phi, out.sets[1].phi);
  return out;
}

namespace {

struct BruteState {
  const MeasuredGraph* g = nullptr;
  int n = 0;
  int labels = 0;  // k + 1
  std::vector<int> label;     // 0 = unassigned, 1..labels
  std::vector<double> mass;   // per label, 1-based
  std::vector<double> bound;  // per label, 1-based
  double best = kInf;
  std::vector<int> best_label;
};

void brute_recurse(BruteState& st, int v, int max_used) {
  if (st.n - v < st.labels - max_used) return;  // not enough vertices left
  if (v == st.n) {
    if (max_used != st.labels) return;
    double worst = 0.0;
    for (int l = 1; l <= st.labels; ++l)
      worst = std::max(worst, st.bound[static_cast<size_t>(l)] / st.mass[static_cast<size_t>(l)]);
    if (worst < st.best) {
      st.best = worst;
      st.best_label = st.label;
    }
    return;
  }
  const int cap = std::min(max_used + 1, st.labels);
  for (int l = 0; l <= cap; ++l) {
    st.label[static_cast<size_t>(v)] = l;
    std::vector<std::pair<int, double>> touched;  // (label, delta) to undo
    if (l > 0) st.mass[static_cast<size_t>(l)] += st.g->mu(v);
    for (const auto& [u, ei] : st.g->adjacency(v)) {
      if (u > v) continue;  // count each edge at its later endpoint
      const Edge& e = st.g->edges()[static_cast<size_t>(ei)];
      const int lu = st.label[static_cast<size_t>(u)];
      if (lu == l) continue;  // same label (or both none): not a boundary edge
      if (lu > 0) {
        st.bound[static_cast<size_t>(lu)] += e.p;
        touched.emplace_back(lu, e.p);
      }
      if (l > 0) {
        st.bound[static_cast<size_t>(l)] += e.p;
        touched.emplace_back(l, e.p);
      }
    }
    brute_recurse(st, v + 1, std::max(max_used, l));
    for (const auto& [tl, delta] : touched) st.bound[static_cast<size_t>(tl)] -= delta;
    if (l > 0) st.mass[static_cast<size_t>(l)] -= st.g->mu(v);
  }
  st.label[static_cast<size_t>(v)] = 0;
}

}  // namespace

MultiwayCut hk_bruteforce(const MeasuredGraph& g, int k) {
  const int n = g.vertex_count();
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (k + 1 > n) throw Error(ErrorCode::KTooLarge, "needs at least k+1 vertices");
  if (n > 12) throw Error(ErrorCode::TooLargeForExact, "label enumeration caps at 12");

  BruteState st;
  st.g = &g;
  st.n = n;
  st.labels = k + 1;
  st.label.assign(static_cast<size_t>(n), 0);
  st.mass.assign(static_cast<size_t>(k) + 2, 0.0);
  st.bound.assign(static_cast<size_t>(k) + 2, 0.0);
  brute_recurse(st, 0, 0);

  MultiwayCut out;
  out.value = 0.0;
  for (int l = 1; l <= k + 1; ++l) {
    std::vector<std::uint8_t> members(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      if (st.best_label[static_cast<size_t>(v)] == l) members[static_cast<size_t>(v)] = 1;
    out.sets.push_back(make_cut(g, members));
    out.value = std::max(out.value, out.sets.back().phi);
  }
  return out;
}

MultiwayCut hk_spectral_heuristic(const MeasuredGraph& g, int k, const Spectrum& spectrum) {
  const int n = g.vertex_count();
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (k + 1 > n) throw Error(ErrorCode::KTooLarge, "needs at least k+1 vertices");
  if (k >= static_cast<int>(spectrum.eigenfunctions.size()))
    throw Error(ErrorCode::KTooLarge, "spectrum does not reach the requested index");

  // Embed by eigenfunctions 1..k.
  auto coord = [&](int v, int d) {
    return spectrum.eigenfunctions[static_cast<size_t>(d) + 1][static_cast<size_t>(v)];
  };
  auto dist_sq = [&](int v, const std::vector<double>& c) {
    double s = 0.0;
    for (int d = 0; d < k; ++d) {
      const double diff = coord(v, d) - c[static_cast<size_t>(d)];
      s += diff * diff;
    }
    return s;
  };

  const int clusters = k + 1;
  std::vector<std::vector<double>> centers;
  centers.reserve(static_cast<size_t>(clusters));
  // Farthest-point seeding from vertex 0.
  {
    std::vector<double> nearest(static_cast<size_t>(n), kInf);
    int seed = 0;
    for (int c = 0; c < clusters; ++c) {
      std::vector<double> ctr(static_cast<size_t>(k));
      for (int d = 0; d < k; ++d) ctr[static_cast<size_t>(d)] = coord(seed, d);
      centers.push_back(ctr);
      int next = -1;
      double far = -1.0;
      for (int v = 0; v < n; ++v) {
        nearest[static_cast<size_t>(v)] =
            std::min(nearest[static_cast<size_t>(v)], dist_sq(v, ctr));
        if (nearest[static_cast<size_t>(v)] > far) {
          far = nearest[static_cast<size_t>(v)];
          next = v;
        }
      }
      seed = next;
    }
  }

  std::vector<int> assign(static_cast<size_t>(n), 0);
  auto reassign = [&]() {
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      int best_c = 0;
      double best_d = dist_sq(v, centers[0]);
      for (int c = 1; c < clusters; ++c) {
        const double d = dist_sq(v, centers[static_cast<size_t>(c)]);
        if (d < best_d) {
          best_d = d;
          best_c = c;
        }
      }
      if (assign[static_cast<size_t>(v)] != best_c) {
        assign[static_cast<size_t>(v)] = best_c;
        changed = true;
      }
    }
    return changed;
  };
  auto fix_empty = [&]() {
    std::vector<int> size(static_cast<size_t>(clusters), 0);
    for (int v = 0; v < n; ++v) ++size[static_cast<size_t>(assign[static_cast<size_t>(v)])];
    for (int c = 0; c < clusters; ++c) {
      if (size[static_cast<size_t>(c)] > 0) continue;
      // Move the vertex farthest from its own centroid (ties: lowest index),
      // taken from a cluster that keeps at least one member.
      int pick = -1;
      double far = -1.0;
      for (int v = 0; v < n; ++v) {
        const int cv = assign[static_cast<size_t>(v)];
        if (size[static_cast<size_t>(cv)] < 2) continue;
        const double d = dist_sq(v, centers[static_cast<size_t>(cv)]);
        if (d > far) {
          far = d;
          pick = v;
        }
      }
      --size[static_cast<size_t>(assign[static_cast<size_t>(pick)])];
      assign[static_cast<size_t>(pick)] = c;
      size[static_cast<size_t>(c)] = 1;
    }
  };

  reassign();
  fix_empty();
  for (int round = 0; round < 100; ++round) {
    // mu-weighted centroids
    std::vector<std::vector<double>> next(static_cast<size_t>(clusters),
                                          std::vector<double>(static_cast<size_t>(k), 0.0));
    std::vector<double> wsum(static_cast<size_t>(clusters), 0.0);
    for (int v = 0; v < n; ++v) {
      const int c = assign[static_cast<size_t>(v)];
      wsum[static_cast<size_t>(c)] += g.mu(v);
      for (int d = 0; d < k; ++d)
        next[static_cast<size_t>(c)][static_cast<size_t>(d)] += g.mu(v) * coord(v, d);
    }
    for (int c = 0; c < clusters; ++c) {
      if (wsum[static_cast<size_t>(c)] <= 0.0) continue;
      for (int d = 0; d < k; ++d)
        next[static_cast<size_t>(c)][static_cast<size_t>(d)] /= wsum[static_cast<size_t>(c)];
    }
    centers = std::move(next);
    const bool changed = reassign();
    fix_empty();
    if (!changed) break;
  }

  MultiwayCut out;
  out.value = 0.0;
  for (int c = 0; c < clusters; ++c) {
    std::vector<std::uint8_t> members(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      if (assign[static_cast<size_t>(v)] == c) members[static_cast<size_t>(v)] = 1;
    out.sets.push_back(make_cut(g, members));
    out.value = std::max(out.value, out.sets.back().phi);
  }
  return out;
}

std::vector<VertexFunction> disjoint_functions_from_partition(
    const MeasuredGraph& g, const std::vector<std::vector<std::uint8_t>>& sets) {
  const int n = g.vertex_count();
  if (sets.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 sets");
  std::vector<std::uint8_t> owned(static_cast<size_t>(n), 0);
  for (const auto& s : sets) {
    if (static_cast<int>(s.size()) != n)
      throw Error(ErrorCode::InvalidArgument, "indicator size mismatch");
    bool nonempty = false;
    for (int v = 0; v < n; ++v) {
      if (!s[static_cast<size_t>(v)]) continue;
      nonempty = true;
      if (owned[static_cast<size_t>(v)]) throw Error(ErrorCode::NotDisjoint, "sets overlap");
      owned[static_cast<size_t>(v)] = 1;
    }
    if (!nonempty) throw Error(ErrorCode::EmptySet, "each set must be nonempty");
  }

  const bool use_lengths = g.has_edge_lengths();
  std::vector<VertexFunction> fns;
  fns.reserve(sets.size());
  for (const auto& s : sets) {
    std::vector<int> complement;
    for (int v = 0; v < n; ++v)
      if (!s[static_cast<size_t>(v)]) complement.push_back(v);
    const std::vector<double> dist = detail::distances_from(g, complement, use_lengths);
    VertexFunction f(static_cast<size_t>(n), 0.0);
    double top = 0.0;
    for (int v = 0; v < n; ++v) {
      if (s[static_cast<size_t>(v)] && std::isfinite(dist[static_cast<size_t>(v)]))
        top = std::max(top, dist[static_cast<size_t>(v)]);
    }
    if (top <= 0.0) throw Error(ErrorCode::DegenerateFunction, "set has no interior distance");
    for (int v = 0; v < n; ++v) {
      if (!s[static_cast<size_t>(v)]) continue;
      const double d = dist[static_cast<size_t>(v)];
      f[static_cast<size_t>(v)] = std::isfinite(d) ? d / top : 1.0;
    }
    fns.push_back(std::move(f));
  }
  return fns;
}

InequalityReport buser_ledoux_check(double h1_value, double lambda_1) {
  InequalityReport r;
  r.name = "buser-lower";
  r.k = 1;
  r.lhs = constants::buser_ledoux() * std::sqrt(lambda_1);
  r.rhs = h1_value;
  r.constants["factor"] = constants::buser_ledoux();
  r.constants["lambda_1"] = lambda_1;
  r.finalize();
  return r;
}

InequalityReport higher_buser_ledoux_check(double h1_value, int k, double lambda_k) {
  InequalityReport r;
  r.name = "multiway-buser-lower";
  r.k = k;
  r.lhs = constants::higher_buser() * std::sqrt(lambda_k) / k;
  r.rhs = h1_value;
  r.constants["factor"] = constants::higher_buser();
  r.constants["lambda_k"] = lambda_k;
  r.finalize();
  return r;
}

InequalityReport hk_ratio_check(double hk_upper, int k, double h1_value) {
  InequalityReport r;
  r.name = "multiway-ratio";
  r.k = k;
  r.lhs = hk_upper;
  r.rhs = k * std::sqrt(std::log(1.0 + k)) * h1_value;
  r.asserted = false;
  const double denom = r.rhs;
  r.constants["empirical_c"] = denom > 0.0 ? hk_upper / denom : 0.0;
  r.finalize();
  return r;
}

nlohmann::json to_json(const MultiwayCut& c) {
  nlohmann::json sets = nlohmann::json::array();
  for (const CutCertificate& s : c.sets) sets.push_back(to_json(s));
  return nlohmann::json{{"value", c.value}, {"sets", std::move(sets)}};
}

}  // namespace speclab
