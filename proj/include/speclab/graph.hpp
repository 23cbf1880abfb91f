#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speclab/errors.hpp"

namespace speclab {

// Undirected edge, stored once with u < v. `w` enters the Dirichlet energy,
// `p` enters boundary measure / total variation. `ell` is an optional metric
// length used by distance-based functionals.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
  double p = 0.0;
  double ell = 0.0;
  bool has_ell = false;

  Edge() = default;
  Edge(int u_, int v_, double w_) : u(u_), v(v_), w(w_), p(w_) {}
  Edge(int u_, int v_, double w_, double p_) : u(u_), v(v_), w(w_), p(p_) {}
  Edge(int u_, int v_, double w_, double p_, double ell_)
      : u(u_), v(v_), w(w_), p(p_), ell(ell_), has_ell(true) {}
};

using VertexFunction = std::vector<double>;

// Provenance tag for graphs produced by the model-space generators. Vertex
// order is row-major over `counts`.
struct ModelInfo {
  enum class Kind { Circle, Torus };
  Kind kind = Kind::Circle;
  int dim = 1;
  double a = 1.0;
  std::vector<double> sides;
  std::vector<int> counts;
};

class MeasuredGraph {
 public:
  // Validates and normalizes: mu_i > 0 and sum within 1e-9 of 1 (then
  // renormalized exactly), w,p >= 0, no self-loops or duplicates, connected
  // over edges with w > 0.
  static MeasuredGraph build(int n, std::vector<double> mu, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<double>& mu() const { return mu_; }
  double mu(int v) const { return mu_[static_cast<size_t>(v)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // (neighbor, edge index) pairs.
  const std::vector<std::pair<int, int>>& adjacency(int v) const {
    return adj_[static_cast<size_t>(v)];
  }

  bool has_edge_lengths() const;

  const std::optional<ModelInfo>& model() const { return model_; }
  void set_model(ModelInfo info) { model_ = std::move(info); }

 private:
  MeasuredGraph() = default;
  int n_ = 0;
  std::vector<double> mu_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::optional<ModelInfo> model_;
};

struct CutCertificate {
  std::vector<std::uint8_t> members;  // indicator over vertices
  double mass = 0.0;
  double boundary = 0.0;
  double phi = 0.0;
  double threshold = 0.0;  // set for sweep-derived cuts
};

// sum_e w_e (f_u - f_v)^2
double dirichlet_energy(const MeasuredGraph& g, const VertexFunction& f);
// dirichlet_energy / ||f||_mu^2; ZeroFunction if the norm vanishes
double rayleigh_quotient(const MeasuredGraph& g, const VertexFunction& f);
// sum of p over edges crossing the indicator set
double boundary_measure(const MeasuredGraph& g, const std::vector<std::uint8_t>& members);
// boundary / mass; EmptySet if the set has zero measure
double conductance(const MeasuredGraph& g, const std::vector<std::uint8_t>& members);
// sum_e p_e |f_u - f_v|
double total_variation(const MeasuredGraph& g, const VertexFunction& f);
double l1_norm(const MeasuredGraph& g, const VertexFunction& f);
double l2_norm_sq(const MeasuredGraph& g, const VertexFunction& f);
// strict superlevel set {f > t}
std::vector<std::uint8_t> superlevel_set(const VertexFunction& f, double t);

CutCertificate make_cut(const MeasuredGraph& g, const std::vector<std::uint8_t>& members,
                        double threshold = 0.0);

// Throws InvalidArgument on size mismatch or non-finite entries.
void check_function(const MeasuredGraph& g, const VertexFunction& f);

// Text format: "n m" header, n mu lines, m lines "u v w p ell" with "-" for a
// missing ell. Doubles are written with 17 significant digits so that
// write -> read reproduces values bit-exactly.
std::string graph_to_string(const MeasuredGraph& g);
MeasuredGraph graph_from_string(const std::string& text);
void write_graph_file(const MeasuredGraph& g, const std::string& path);
MeasuredGraph read_graph_file(const std::string& path);

}  // namespace speclab
