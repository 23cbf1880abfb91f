#include "speclab.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "speclab/concentration.hpp"
#include "speclab/errors.hpp"
#include "speclab/graph.hpp"
#include "speclab/harness.hpp"
#include "speclab/improved_cheeger.hpp"
#include "speclab/isoperimetry.hpp"
#include "speclab/model_spaces.hpp"
#include "speclab/report.hpp"
#include "speclab/spectra.hpp"

struct speclab_graph {
  speclab::MeasuredGraph g;
};

struct speclab_spectrum {
  speclab::Spectrum s;
  int n = 0;
};

namespace {

thread_local std::string t_last_error;

speclab_status status_of(speclab::ErrorCode code) {
  using EC = speclab::ErrorCode;
  switch (code) {
    case EC::InvalidArgument: return SPECLAB_ERR_INVALID_ARGUMENT;
    case EC::IoError: return SPECLAB_ERR_IO;
    case EC::ConfigError: return SPECLAB_ERR_CONFIG;
    case EC::DisconnectedGraph: return SPECLAB_ERR_DISCONNECTED_GRAPH;
    case EC::NonpositiveMeasure: return SPECLAB_ERR_NONPOSITIVE_MEASURE;
    case EC::NegativeWeight: return SPECLAB_ERR_NEGATIVE_WEIGHT;
    case EC::DuplicateEdge: return SPECLAB_ERR_DUPLICATE_EDGE;
    case EC::ZeroFunction: return SPECLAB_ERR_ZERO_FUNCTION;
    case EC::NegativeInput: return SPECLAB_ERR_NEGATIVE_INPUT;
    case EC::DegenerateFunction: return SPECLAB_ERR_DEGENERATE_FUNCTION;
    case EC::EmptySet: return SPECLAB_ERR_EMPTY_SET;
    case EC::NotDisjoint: return SPECLAB_ERR_NOT_DISJOINT;
    case EC::KTooLarge: return SPECLAB_ERR_K_TOO_LARGE;
    case EC::ConvergenceFailure: return SPECLAB_ERR_CONVERGENCE_FAILURE;
    case EC::DegenerateSpectrum: return SPECLAB_ERR_DEGENERATE_SPECTRUM;
    case EC::NotAnEigenfunction: return SPECLAB_ERR_NOT_AN_EIGENFUNCTION;
    case EC::OneSidedFunction: return SPECLAB_ERR_ONE_SIDED_FUNCTION;
    case EC::BadResolution: return SPECLAB_ERR_BAD_RESOLUTION;
    case EC::TooLarge: return SPECLAB_ERR_TOO_LARGE;
    case EC::EnumerationOverflow: return SPECLAB_ERR_ENUMERATION_OVERFLOW;
    case EC::TooLargeForExact: return SPECLAB_ERR_TOO_LARGE_FOR_EXACT;
    case EC::H1NotExact: return SPECLAB_ERR_H1_NOT_EXACT;
    case EC::BadKappa: return SPECLAB_ERR_BAD_KAPPA;
    case EC::NoEdgeLengths: return SPECLAB_ERR_NO_EDGE_LENGTHS;
  }
  return SPECLAB_ERR_INTERNAL;
}

int fail(speclab_status st, const std::string& message) {
  t_last_error = message;
  return st;
}

template <typename Fn>
int guard(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return SPECLAB_OK;
  } catch (const speclab::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPECLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPECLAB_ERR_INTERNAL, e.what());
  }
}

int require(bool ok, const char* message) {
  return ok ? SPECLAB_OK : fail(SPECLAB_ERR_INVALID_ARGUMENT, message);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename Fn>
int functional(const speclab_graph* g, const double* f, double* out, Fn&& fn) {
  if (int rc = require(g && f && out, "null argument")) return rc;
  return guard([&] {
    const speclab::VertexFunction fv(f, f + g->g.vertex_count());
    *out = fn(g->g, fv);
  });
}

template <typename Fn>
int set_functional(const speclab_graph* g, const unsigned char* members, double* out, Fn&& fn) {
  if (int rc = require(g && members && out, "null argument")) return rc;
  return guard([&] {
    const std::vector<std::uint8_t> m(members, members + g->g.vertex_count());
    *out = fn(g->g, m);
  });
}

std::string graph_label(const speclab::MeasuredGraph& g) {
  if (!g.model()) return "graph(n=" + std::to_string(g.vertex_count()) + ")";
  const speclab::ModelInfo& mi = *g.model();
  char buf[160];
  if (mi.kind == speclab::ModelInfo::Kind::Circle) {
    std::snprintf(buf, sizeof buf, "circle(a=%.6g;n=%d)", mi.a, mi.counts[0]);
    return buf;
  }
  std::string cs;
  for (size_t i = 0; i < mi.counts.size(); ++i) {
    if (i) cs += 'x';
    cs += std::to_string(mi.counts[i]);
  }
  std::snprintf(buf, sizeof buf, "torus(dim=%d;a=%.6g;counts=%s)", mi.dim, mi.a, cs.c_str());
  return buf;
}

std::string render_report(const std::vector<speclab::InequalityReport>& rows,
                          nlohmann::json extra, const char* format) {
  const std::string fmt = format ? format : "json";
  if (fmt == "csv") {
    std::string out = speclab::csv_header() + "\n";
    for (const auto& r : rows) out += speclab::to_csv_row(r) + "\n";
    return out;
  }
  if (fmt == "json") {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : rows) checks.push_back(speclab::to_json(r));
    extra["checks"] = std::move(checks);
    return extra.dump(2) + "\n";
  }
  throw speclab::Error(speclab::ErrorCode::InvalidArgument, "format must be json or csv");
}

std::vector<double> exact_or_discrete(const speclab::MeasuredGraph& g,
                                      const speclab::Spectrum& s, int k_max) {
  if (!g.model()) return s.eigenvalues;
  const speclab::ModelInfo& mi = *g.model();
  return mi.kind == speclab::ModelInfo::Kind::Circle
             ? speclab::circle_exact_spectrum(mi.a, k_max)
             : speclab::torus_exact_spectrum(mi.dim, mi.a, k_max);
}

}  // namespace

extern "C" {

const char* speclab_status_name(int status) {
  switch (status) {
    case SPECLAB_OK: return "ok";
    case SPECLAB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SPECLAB_ERR_IO: return "io-error";
    case SPECLAB_ERR_CONFIG: return "config-error";
    case SPECLAB_ERR_DISCONNECTED_GRAPH: return "disconnected-graph";
    case SPECLAB_ERR_NONPOSITIVE_MEASURE: return "nonpositive-measure";
    case SPECLAB_ERR_NEGATIVE_WEIGHT: return "negative-weight";
    case SPECLAB_ERR_DUPLICATE_EDGE: return "duplicate-edge";
    case SPECLAB_ERR_ZERO_FUNCTION: return "zero-function";
    case SPECLAB_ERR_NEGATIVE_INPUT: return "negative-input";
    case SPECLAB_ERR_DEGENERATE_FUNCTION: return "degenerate-function";
    case SPECLAB_ERR_EMPTY_SET: return "empty-set";
    case SPECLAB_ERR_NOT_DISJOINT: return "not-disjoint";
    case SPECLAB_ERR_K_TOO_LARGE: return "k-too-large";
    case SPECLAB_ERR_CONVERGENCE_FAILURE: return "convergence-failure";
    case SPECLAB_ERR_DEGENERATE_SPECTRUM: return "degenerate-spectrum";
    case SPECLAB_ERR_NOT_AN_EIGENFUNCTION: return "not-an-eigenfunction";
    case SPECLAB_ERR_ONE_SIDED_FUNCTION: return "one-sided-function";
    case SPECLAB_ERR_BAD_RESOLUTION: return "bad-resolution";
    case SPECLAB_ERR_TOO_LARGE: return "too-large";
    case SPECLAB_ERR_ENUMERATION_OVERFLOW: return "enumeration-overflow";
    case SPECLAB_ERR_TOO_LARGE_FOR_EXACT: return "too-large-for-exact";
    case SPECLAB_ERR_H1_NOT_EXACT: return "h1-not-exact";
    case SPECLAB_ERR_BAD_KAPPA: return "bad-kappa";
    case SPECLAB_ERR_NO_EDGE_LENGTHS: return "no-edge-lengths";
    case SPECLAB_ERR_INTERNAL: return "internal";
    default: return "unknown";
  }
}

const char* speclab_last_error(void) { return t_last_error.c_str(); }

void speclab_string_free(char* s) { std::free(s); }

/* ---- graphs ------------------------------------------------------------ */

int speclab_graph_build(int n, const double* mu, int m, const int* endpoints, const double* w,
                        const double* p, const double* ell, speclab_graph** out) {
  if (int rc = require(out && mu && (m == 0 || (endpoints && w)), "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    std::vector<double> mu_v(mu, mu + (n > 0 ? n : 0));
    std::vector<speclab::Edge> edges;
    edges.reserve(static_cast<size_t>(m > 0 ? m : 0));
    for (int i = 0; i < m; ++i) {
      const int u = endpoints[2 * i], v = endpoints[2 * i + 1];
      const double pw = p ? p[i] : w[i];
      if (ell)
        edges.emplace_back(u, v, w[i], pw, ell[i]);
      else
        edges.emplace_back(u, v, w[i], pw);
    }
    auto* h = new speclab_graph{speclab::MeasuredGraph::build(n, std::move(mu_v), std::move(edges))};
    *out = h;
  });
}

int speclab_graph_from_file(const char* path, speclab_graph** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] { *out = new speclab_graph{speclab::read_graph_file(path)}; });
}

int speclab_graph_to_file(const speclab_graph* g, const char* path) {
  if (int rc = require(g && path, "null argument")) return rc;
  return guard([&] { speclab::write_graph_file(g->g, path); });
}

int speclab_graph_from_model_string(const char* model, speclab_graph** out) {
  if (int rc = require(model && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] { *out = new speclab_graph{speclab::graph_from_model_string(model)}; });
}

void speclab_graph_free(speclab_graph* g) { delete g; }

int speclab_graph_vertex_count(const speclab_graph* g, int* out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = g->g.vertex_count();
  return SPECLAB_OK;
}

int speclab_graph_edge_count(const speclab_graph* g, int* out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = g->g.edge_count();
  return SPECLAB_OK;
}

int speclab_graph_mu(const speclab_graph* g, double* out, size_t cap) {
  if (int rc = require(g && out, "null argument")) return rc;
  const auto& mu = g->g.mu();
  if (cap < mu.size()) return fail(SPECLAB_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(out, mu.data(), mu.size() * sizeof(double));
  return SPECLAB_OK;
}

int speclab_circle_graph(double a, int n_points, speclab_graph** out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  *out = nullptr;
  return guard([&] { *out = new speclab_graph{speclab::circle_graph(a, n_points)}; });
}

int speclab_torus_graph(int dim, double a, const int* counts, double points_per_unit,
                        long long max_vertices, speclab_graph** out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    speclab::TorusSpec spec;
    spec.dim = dim;
    spec.a = a;
    if (counts) spec.counts.assign(counts, counts + dim);
    if (points_per_unit > 0.0) spec.points_per_unit = points_per_unit;
    if (max_vertices > 0) spec.max_vertices = max_vertices;
    *out = new speclab_graph{speclab::torus_graph(spec)};
  });
}

/* ---- functionals -------------------------------------------------------- */

int speclab_dirichlet_energy(const speclab_graph* g, const double* f, double* out) {
  return functional(g, f, out,
                    [](const auto& gr, const auto& fv) { return speclab::dirichlet_energy(gr, fv); });
}

int speclab_rayleigh_quotient(const speclab_graph* g, const double* f, double* out) {
  return functional(g, f, out, [](const auto& gr, const auto& fv) {
    return speclab::rayleigh_quotient(gr, fv);
  });
}

int speclab_total_variation(const speclab_graph* g, const double* f, double* out) {
  return functional(g, f, out,
                    [](const auto& gr, const auto& fv) { return speclab::total_variation(gr, fv); });
}

int speclab_l1_norm(const speclab_graph* g, const double* f, double* out) {
  return functional(g, f, out,
                    [](const auto& gr, const auto& fv) { return speclab::l1_norm(gr, fv); });
}

int speclab_l2_norm_sq(const speclab_graph* g, const double* f, double* out) {
  return functional(g, f, out,
                    [](const auto& gr, const auto& fv) { return speclab::l2_norm_sq(gr, fv); });
}

int speclab_boundary_measure(const speclab_graph* g, const unsigned char* members, double* out) {
  return set_functional(g, members, out, [](const auto& gr, const auto& m) {
    return speclab::boundary_measure(gr, m);
  });
}

int speclab_conductance(const speclab_graph* g, const unsigned char* members, double* out) {
  return set_functional(g, members, out,
                        [](const auto& gr, const auto& m) { return speclab::conductance(gr, m); });
}

/* ---- spectra ------------------------------------------------------------ */

int speclab_spectrum_compute(const speclab_graph* g, int k_max, const char* method,
                             speclab_spectrum** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    const speclab::SpectrumMethod m =
        speclab::spectrum_method_from_string(method ? method : "auto");
    auto* h = new speclab_spectrum{speclab::compute_spectrum(g->g, k_max, m), g->g.vertex_count()};
    *out = h;
  });
}

void speclab_spectrum_free(speclab_spectrum* s) { delete s; }

int speclab_spectrum_count(const speclab_spectrum* s, int* out) {
  if (int rc = require(s && out, "null argument")) return rc;
  *out = static_cast<int>(s->s.eigenvalues.size());
  return SPECLAB_OK;
}

int speclab_spectrum_eigenvalues(const speclab_spectrum* s, double* out, size_t cap) {
  if (int rc = require(s && out, "null argument")) return rc;
  if (cap < s->s.eigenvalues.size()) return fail(SPECLAB_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(out, s->s.eigenvalues.data(), s->s.eigenvalues.size() * sizeof(double));
  return SPECLAB_OK;
}

int speclab_spectrum_eigenfunction(const speclab_spectrum* s, int idx, double* out, size_t cap) {
  if (int rc = require(s && out, "null argument")) return rc;
  if (idx < 0 || idx >= static_cast<int>(s->s.eigenfunctions.size()))
    return fail(SPECLAB_ERR_INVALID_ARGUMENT, "eigenfunction index out of range");
  const auto& f = s->s.eigenfunctions[static_cast<size_t>(idx)];
  if (cap < f.size()) return fail(SPECLAB_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(out, f.data(), f.size() * sizeof(double));
  return SPECLAB_OK;
}

int speclab_circle_exact_spectrum(double a, int k_max, double* out, size_t cap) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guard([&] {
    const std::vector<double> ev = speclab::circle_exact_spectrum(a, k_max);
    if (cap < ev.size())
      throw speclab::Error(speclab::ErrorCode::InvalidArgument, "buffer too small");
    std::memcpy(out, ev.data(), ev.size() * sizeof(double));
  });
}

int speclab_torus_exact_spectrum(int dim, double a, int k_max, double* out, size_t cap) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guard([&] {
    const std::vector<double> ev = speclab::torus_exact_spectrum(dim, a, k_max);
    if (cap < ev.size())
      throw speclab::Error(speclab::ErrorCode::InvalidArgument, "buffer too small");
    std::memcpy(out, ev.data(), ev.size() * sizeof(double));
  });
}

int speclab_ratio_witness(int dim, double a, int* k_out, double* ratio_out, double* lower_out) {
  if (int rc = require(k_out && ratio_out && lower_out, "null argument")) return rc;
  return guard([&] {
    const speclab::RatioWitness w = speclab::ratio_witness(dim, a);
    *k_out = w.k;
    *ratio_out = w.ratio;
    *lower_out = w.lower_bound;
  });
}

/* ---- reports ------------------------------------------------------------ */

int speclab_spectrum_report(const speclab_graph* g, int k_max, const char* method,
                            const char* format, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    const speclab::SpectrumMethod m =
        speclab::spectrum_method_from_string(method ? method : "auto");
    const speclab::Spectrum s = speclab::compute_spectrum(g->g, k_max, m);
    const std::string label = graph_label(g->g);
    const bool is_model = g->g.model().has_value();
    const std::vector<double> basis = exact_or_discrete(g->g, s, k_max);

    std::vector<speclab::InequalityReport> rows;
    for (int k = 1; k <= k_max && k < static_cast<int>(basis.size()); ++k) {
      speclab::InequalityReport r = speclab::ratio_bound_check(basis, k);
      r.model = label;
      if (!is_model) {
        r.asserted = false;
        r.note = "reported for data graphs; asserted on exact model spectra";
        r.finalize();
      }
      rows.push_back(std::move(r));
    }

    nlohmann::json extra{{"model", label},
                         {"eigenvalues", s.eigenvalues},
                         {"method", speclab::spectrum_method_name(s.method_used)},
                         {"iterations", s.iterations},
                         {"max_residual", s.max_residual}};
    *out = dup_string(render_report(rows, std::move(extra), format));
    if (!*out) throw std::bad_alloc();
  });
}

int speclab_cheeger_report(const speclab_graph* g, const char* method, const char* format,
                           char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    const speclab::SpectrumMethod m =
        speclab::spectrum_method_from_string(method ? method : "auto");
    const speclab::Spectrum s = speclab::compute_spectrum(g->g, 1, m);
    speclab::CutCertificate cut;
    const double h1_upper = speclab::h1_sweep_upper(g->g, s.eigenfunctions[1], &cut);
    const std::string label = graph_label(g->g);

    speclab::InequalityReport r;
    r.name = "buser-lower";
    r.model = label;
    r.k = 1;
    r.lhs = speclab::constants::buser_ledoux() * std::sqrt(s.eigenvalues[1]);
    r.rhs = h1_upper;
    r.asserted = false;
    r.note = "sweep upper bound for h1; the suite asserts against exact h1";
    r.constants["factor"] = speclab::constants::buser_ledoux();
    r.constants["lambda_1"] = s.eigenvalues[1];
    r.finalize();

    nlohmann::json extra{{"model", label},
                         {"lambda_1", s.eigenvalues[1]},
                         {"h1_upper", h1_upper},
                         {"cut", speclab::to_json(cut)}};
    *out = dup_string(render_report({r}, std::move(extra), format));
    if (!*out) throw std::bad_alloc();
  });
}

int speclab_improved_cheeger_report(const speclab_graph* g, int k, const char* method,
                                    const char* format, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    const speclab::SpectrumMethod m =
        speclab::spectrum_method_from_string(method ? method : "auto");
    const speclab::Spectrum s = speclab::compute_spectrum(g->g, k, m);
    const auto [pos, neg] = speclab::eigenfunction_split(
        g->g, s.eigenfunctions[static_cast<size_t>(k)], s.eigenvalues[static_cast<size_t>(k)]);
    (void)neg;
    const speclab::ImprovedCheegerCertificate cert =
        speclab::functional_certificate(g->g, pos, k, s);
    const std::string label = graph_label(g->g);

    speclab::InequalityReport r;
    r.name = "improved-cheeger";
    r.model = label;
    r.k = k;
    r.lhs = cert.phi_f;
    r.rhs = cert.rhs;
    r.constants["factor"] = speclab::constants::improved_cheeger();
    r.details["intermediate_rhs"] = cert.intermediate_rhs;
    r.finalize();

    speclab::InequalityReport st =
        speclab::step_error_bound_check(g->g, pos, cert.step, k, cert.lambda_k);
    st.model = label;

    nlohmann::json extra{{"model", label}, {"certificate", speclab::to_json(cert)}};
    *out = dup_string(render_report({r, st}, std::move(extra), format));
    if (!*out) throw std::bad_alloc();
  });
}

int speclab_multiway_report(const speclab_graph* g, int k, const char* method, int exact_cap,
                            const char* format, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    const speclab::SpectrumMethod m =
        speclab::spectrum_method_from_string(method ? method : "auto");
    const speclab::Spectrum s = speclab::compute_spectrum(g->g, k + 1, m);
    const bool exact_partition = g->g.vertex_count() <= exact_cap;
    const speclab::MultiwayCut cut = exact_partition
                                         ? speclab::hk_bruteforce(g->g, k)
                                         : speclab::hk_spectral_heuristic(g->g, k, s);
    std::vector<std::vector<std::uint8_t>> sets;
    for (const auto& c : cut.sets) sets.push_back(c.members);
    const auto fns = speclab::disjoint_functions_from_partition(g->g, sets);
    const speclab::MultiwayCertificate cert =
        speclab::higher_order_certificate(g->g, k, k + 1, fns, s);
    const std::string label = graph_label(g->g);

    speclab::InequalityReport r;
    r.name = "multiway-functional";
    r.model = label;
    r.k = k;
    r.lhs = cert.hk_upper;
    r.rhs = cert.rhs;
    r.constants["factor"] = speclab::constants::improved_cheeger();
    r.details["l"] = cert.l;
    r.details["empirical_c"] = cert.empirical_c;
    r.details["partition"] = exact_partition ? "exact" : "heuristic";
    r.finalize();

    nlohmann::json extra{{"model", label},
                         {"cut", speclab::to_json(cut)},
                         {"certificate", speclab::to_json(cert)}};
    *out = dup_string(render_report({r}, std::move(extra), format));
    if (!*out) throw std::bad_alloc();
  });
}

int speclab_obsdiam_report(const speclab_graph* g, double kappa, int k, const char* method,
                           const char* format, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    const speclab::SpectrumMethod m =
        speclab::spectrum_method_from_string(method ? method : "auto");
    const speclab::Spectrum s = speclab::compute_spectrum(g->g, k, m);
    const speclab::ObsDiamEstimate obs = speclab::obs_diameter_lower(g->g, kappa);
    const std::string label = graph_label(g->g);
    const std::vector<double> basis = exact_or_discrete(g->g, s, k);

    std::vector<speclab::InequalityReport> rows;
    for (int j = 1; j <= k && j < static_cast<int>(basis.size()); ++j) {
      speclab::InequalityReport r = speclab::cheng_dimension_free_check(
          obs.value, j, kappa, basis[static_cast<size_t>(j)]);
      r.model = label;
      r.details["witness"] = obs.witness_kind;
      rows.push_back(std::move(r));
    }

    nlohmann::json extra{{"model", label},
                         {"kappa", kappa},
                         {"value", obs.value},
                         {"witness_kind", obs.witness_kind},
                         {"window", {obs.window.lo, obs.window.hi}},
                         {"window_mass", obs.window.mass},
                         {"candidates", obs.candidates}};
    *out = dup_string(render_report(rows, std::move(extra), format));
    if (!*out) throw std::bad_alloc();
  });
}

int speclab_ratio_scan_report(const int* dims, int dim_count, const double* a_values, int a_count,
                              const char* format, char** out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  *out = nullptr;
  return guard([&] {
    std::vector<int> dim_v;
    if (dims && dim_count > 0)
      dim_v.assign(dims, dims + dim_count);
    else
      dim_v = {2, 3};
    std::vector<double> a_v;
    if (a_values && a_count > 0)
      a_v.assign(a_values, a_values + a_count);
    else
      for (int i = 1; i <= 9; ++i) a_v.push_back(i / 10.0);

    std::vector<speclab::InequalityReport> rows;
    for (const speclab::ScanRow& row : speclab::optimality_scan(dim_v, a_v)) {
      speclab::InequalityReport r;
      r.name = "ratio-optimality";
      char buf[64];
      std::snprintf(buf, sizeof buf, "torus(dim=%d;a=%.6g)", row.dim, row.a);
      r.model = buf;
      r.k = row.k;
      r.lhs = row.lower;
      r.rhs = row.ratio;
      r.finalize();
      rows.push_back(std::move(r));
    }

    *out = dup_string(render_report(rows, nlohmann::json::object(), format));
    if (!*out) throw std::bad_alloc();
  });
}

int speclab_run_suite(const char* config_path, const char* out_dir, int* fail_count,
                      char** summary_csv) {
  if (int rc = require(config_path && fail_count, "null argument")) return rc;
  *fail_count = -1;
  if (summary_csv) *summary_csv = nullptr;
  return guard([&] {
    speclab::ExperimentConfig cfg = speclab::ExperimentConfig::from_json_file(config_path);
    if (out_dir) cfg.out_dir = out_dir;
    const speclab::SuiteResult result = speclab::run_suite(cfg);
    speclab::write_suite_outputs(result, cfg.out_dir);
    *fail_count = result.fail_count + result.error_count;
    if (summary_csv) {
      *summary_csv = dup_string(result.csv);
      if (!*summary_csv) throw std::bad_alloc();
    }
  });
}

} /* extern "C" */
