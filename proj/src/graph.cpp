#include "speclab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "speclab/report.hpp"

namespace speclab {

namespace {

void validate_vertex(int n, int v) {
  if (v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
}

}  // namespace

MeasuredGraph MeasuredGraph::build(int n, std::vector<double> mu, std::vector<Edge> edges) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "vertex count must be positive");
  if (static_cast<int>(mu.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "mu size does not match vertex count");

  double total = 0.0;
  for (double m : mu) {
    if (!std::isfinite(m) || m <= 0.0)
      throw Error(ErrorCode::NonpositiveMeasure, "vertex measures must be positive and finite");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::NonpositiveMeasure,
                "vertex measures must sum to 1 within 1e-9 (got " + format_g17(total) + ")");
  for (double& m : mu) m /= total;

  for (Edge& e : edges) {
    validate_vertex(n, e.u);
    validate_vertex(n, e.v);
    if (e.u == e.v) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!std::isfinite(e.w) || e.w < 0.0)
      throw Error(ErrorCode::NegativeWeight, "energy weight must be nonnegative and finite");
    if (!std::isfinite(e.p) || e.p < 0.0)
      throw Error(ErrorCode::NegativeWeight, "perimeter weight must be nonnegative and finite");
    if (e.has_ell && (!std::isfinite(e.ell) || e.ell <= 0.0))
      throw Error(ErrorCode::InvalidArgument, "edge length must be positive and finite");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + std::to_string(edges[i].u) + "-" +
                                                std::to_string(edges[i].v));
  }

  // Connectivity over energy-carrying edges (required for lambda_1 > 0).
  {
    std::vector<std::vector<int>> nbr(static_cast<size_t>(n));
    for (const Edge& e : edges) {
      if (e.w > 0.0) {
        nbr[static_cast<size_t>(e.u)].push_back(e.v);
        nbr[static_cast<size_t>(e.v)].push_back(e.u);
      }
    }
    std::vector<std::uint8_t> seen(static_cast<size_t>(n), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int x : nbr[static_cast<size_t>(v)]) {
        if (!seen[static_cast<size_t>(x)]) {
          seen[static_cast<size_t>(x)] = 1;
          ++count;
          stack.push_back(x);
        }
      }
    }
    if (count != n)
      throw Error(ErrorCode::DisconnectedGraph, "graph is not connected over edges with w > 0");
  }

  MeasuredGraph g;
  g.n_ = n;
  g.mu_ = std::move(mu);
  g.edges_ = std::move(edges);
  g.adj_.assign(static_cast<size_t>(n), {});
  for (int i = 0; i < static_cast<int>(g.edges_.size()); ++i) {
    const Edge& e = g.edges_[static_cast<size_t>(i)];
    g.adj_[static_cast<size_t>(e.u)].emplace_back(e.v, i);
    g.adj_[static_cast<size_t>(e.v)].emplace_back(e.u, i);
  }
  return g;
}

bool MeasuredGraph::has_edge_lengths() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.has_ell; });
}

void check_function(const MeasuredGraph& g, const VertexFunction& f) {
  if (static_cast<int>(f.size()) != g.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "function size does not match vertex count");
  for (double v : f)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "function has non-finite values");
}

double dirichlet_energy(const MeasuredGraph& g, const VertexFunction& f) {
  check_function(g, f);
  double e = 0.0;
  for (const Edge& edge : g.edges()) {
    const double d = f[static_cast<size_t>(edge.u)] - f[static_cast<size_t>(edge.v)];
    e += edge.w * d * d;
  }
  return e;
}

double l1_norm(const MeasuredGraph& g, const VertexFunction& f) {
  check_function(g, f);
  double s = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) s += g.mu(v) * std::abs(f[static_cast<size_t>(v)]);
  return s;
}

double l2_norm_sq(const MeasuredGraph& g, const VertexFunction& f) {
  check_function(g, f);
  double s = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const double x = f[static_cast<size_t>(v)];
    s += g.mu(v) * x * x;
  }
  return s;
}

double rayleigh_quotient(const MeasuredGraph& g, const VertexFunction& f) {
  const double denom = l2_norm_sq(g, f);
  if (denom <= 0.0) throw Error(ErrorCode::ZeroFunction, "Rayleigh quotient of the zero function");
  return dirichlet_energy(g, f) / denom;
}

double boundary_measure(const MeasuredGraph& g, const std::vector<std::uint8_t>& members) {
  if (static_cast<int>(members.size()) != g.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "indicator size does not match vertex count");
  double b = 0.0;
  for (const Edge& e : g.edges()) {
    if ((members[static_cast<size_t>(e.u)] != 0) != (members[static_cast<size_t>(e.v)] != 0))
      b += e.p;
  }
  return b;
}

double conductance(const MeasuredGraph& g, const std::vector<std::uint8_t>& members) {
  if (static_cast<int>(members.size()) != g.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "indicator size does not match vertex count");
  double mass = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (members[static_cast<size_t>(v)]) mass += g.mu(v);
  if (mass <= 0.0) throw Error(ErrorCode::EmptySet, "conductance of a zero-measure set");
  return boundary_measure(g, members) / mass;
}

double total_variation(const MeasuredGraph& g, const VertexFunction& f) {
  check_function(g, f);
  double tv = 0.0;
  for (const Edge& e : g.edges())
    tv += e.p * std::abs(f[static_cast<size_t>(e.u)] - f[static_cast<size_t>(e.v)]);
  return tv;
}

std::vector<std::uint8_t> superlevel_set(const VertexFunction& f, double t) {
  std::vector<std::uint8_t> members(f.size(), 0);
  for (size_t i = 0; i < f.size(); ++i) members[i] = f[i] > t ? 1 : 0;
  return members;
}

CutCertificate make_cut(const MeasuredGraph& g, const std::vector<std::uint8_t>& members,
                        double threshold) {
  CutCertificate c;
  c.members = members;
  c.threshold = threshold;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (members[static_cast<size_t>(v)]) c.mass += g.mu(v);
  c.boundary = boundary_measure(g, members);
  if (c.mass <= 0.0) throw Error(ErrorCode::EmptySet, "cut certificate for a zero-measure set");
  c.phi = c.boundary / c.mass;
  return c;
}

// ==== text format =========================================================

std::string graph_to_string(const MeasuredGraph& g) {
  std::string out;
  out += std::to_string(g.vertex_count());
  out += ' ';
  out += std::to_string(g.edge_count());
  out += '\n';
  for (int v = 0; v < g.vertex_count(); ++v) {
    out += format_g17(g.mu(v));
    out += '\n';
  }
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += format_g17(e.w);
    out += ' ';
    out += format_g17(e.p);
    out += ' ';
    out += e.has_ell ? format_g17(e.ell) : std::string("-");
    out += '\n';
  }
  return out;
}

namespace {

double parse_double_token(const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw Error(ErrorCode::IoError, "malformed numeric token '" + tok + "' in graph text");
  return v;
}

long parse_int_token(const std::string& tok) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0')
    throw Error(ErrorCode::IoError, "malformed integer token '" + tok + "' in graph text");
  return v;
}

}  // namespace

MeasuredGraph graph_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  auto next = [&]() -> std::string {
    if (!(in >> tok)) throw Error(ErrorCode::IoError, "unexpected end of graph text");
    return tok;
  };
  const int n = static_cast<int>(parse_int_token(next()));
  const int m = static_cast<int>(parse_int_token(next()));
  if (n <= 0 || m < 0) throw Error(ErrorCode::IoError, "bad graph header");
  std::vector<double> mu(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) mu[static_cast<size_t>(i)] = parse_double_token(next());
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    Edge e;
    e.u = static_cast<int>(parse_int_token(next()));
    e.v = static_cast<int>(parse_int_token(next()));
    e.w = parse_double_token(next());
    e.p = parse_double_token(next());
    const std::string ltok = next();
    if (ltok != "-") {
      e.ell = parse_double_token(ltok);
      e.has_ell = true;
    }
    edges.push_back(e);
  }
  if (in >> tok) throw Error(ErrorCode::IoError, "trailing tokens after graph data");
  return MeasuredGraph::build(n, std::move(mu), std::move(edges));
}

void write_graph_file(const MeasuredGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  const std::string text = graph_to_string(g);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

MeasuredGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return graph_from_string(buf.str());
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NonpositiveMeasure: return "NonpositiveMeasure";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::DegenerateFunction: return "DegenerateFunction";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NotAnEigenfunction: return "NotAnEigenfunction";
    case ErrorCode::OneSidedFunction: return "OneSidedFunction";
    case ErrorCode::BadResolution: return "BadResolution";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EnumerationOverflow: return "EnumerationOverflow";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::H1NotExact: return "H1NotExact";
    case ErrorCode::BadKappa: return "BadKappa";
    case ErrorCode::NoEdgeLengths: return "NoEdgeLengths";
  }
  return "UnknownError";
}

}  // namespace speclab
