#include "speclab/improved_cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speclab/isoperimetry.hpp"

namespace speclab {

namespace {

double require_nonneg_nonzero(const MeasuredGraph& g, const VertexFunction& f) {
  check_function(g, f);
  double top = 0.0;
  for (double x : f) {
    if (x < 0.0) throw Error(ErrorCode::NegativeInput, "function must be nonnegative");
    top = std::max(top, x);
  }
  if (top == 0.0) throw Error(ErrorCode::ZeroFunction, "function must not be identically zero");
  return top;
}

}  // namespace

double quantize(const std::vector<double>& thresholds, double x) {
  if (thresholds.empty()) throw Error(ErrorCode::InvalidArgument, "no thresholds");
  if (x < 0.0) throw Error(ErrorCode::NegativeInput, "quantize needs x >= 0");
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), x);
  if (it == thresholds.end()) return thresholds.back();
  if (it == thresholds.begin()) return *it;
  const double hi = *it;
  const double lo = *(it - 1);
  return (x - lo <= hi - x) ? lo : hi;
}

double eta(const std::vector<double>& thresholds, double x) {
  return std::abs(x - quantize(thresholds, x));
}

double h_transform(const std::vector<double>& thresholds, double v) {
  if (thresholds.empty()) throw Error(ErrorCode::InvalidArgument, "no thresholds");
  if (v < 0.0) throw Error(ErrorCode::NegativeInput, "h transform needs v >= 0");
  double acc = 0.0;
  for (size_t i = 0; i + 1 < thresholds.size(); ++i) {
    const double lo = thresholds[i];
    const double hi = thresholds[i + 1];
    if (v >= hi) {
      acc += (hi - lo) * (hi - lo) / 4.0;
      continue;
    }
    if (v <= lo) return acc;
    const double mid = lo + (hi - lo) / 2.0;
    if (v <= mid)
      acc += (v - lo) * (v - lo) / 2.0;
    else
      acc += (hi - lo) * (hi - lo) / 4.0 - (hi - v) * (hi - v) / 2.0;
    return acc;
  }
  const double t = thresholds.back();
  if (v > t) acc += (v - t) * (v - t) / 2.0;
  return acc;
}

StepApproximation build_thresholds(const MeasuredGraph& g, const VertexFunction& f, int k,
                                   double lambda_k) {
  const double top = require_nonneg_nonzero(g, f);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (!(lambda_k > 0.0) || !std::isfinite(lambda_k))
    throw Error(ErrorCode::DegenerateSpectrum, "needs a positive eigenvalue");

  const int n = g.vertex_count();
  const double c0 = dirichlet_energy(g, f) / (static_cast<double>(k) * lambda_k);

  // Sorted atoms with prefix moments, so any segment mass is a few range sums.
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) atoms.emplace_back(f[static_cast<size_t>(v)], g.mu(v));
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> vals(static_cast<size_t>(n));
  std::vector<double> s0(static_cast<size_t>(n) + 1, 0.0), s1(static_cast<size_t>(n) + 1, 0.0),
      s2(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& [x, m] = atoms[static_cast<size_t>(i)];
    vals[static_cast<size_t>(i)] = x;
    s0[static_cast<size_t>(i) + 1] = s0[static_cast<size_t>(i)] + m;
    s1[static_cast<size_t>(i) + 1] = s1[static_cast<size_t>(i)] + m * x;
    s2[static_cast<size_t>(i) + 1] = s2[static_cast<size_t>(i)] + m * x * x;
  }
  auto count_le = [&](double t) {
    return std::upper_bound(vals.begin(), vals.end(), t) - vals.begin();
  };
  auto moment = [&](long lo, long hi, double c) {
    if (hi <= lo) return 0.0;
    const size_t a = static_cast<size_t>(lo), b = static_cast<size_t>(hi);
    return (s2[b] - s2[a]) - 2.0 * c * (s1[b] - s1[a]) + c * c * (s0[b] - s0[a]);
  };
  // int_{t_prev < f <= t} dist(f, {t_prev, t})^2 dmu; nondecreasing in t.
  auto segment_mass = [&](double t_prev, double t) {
    if (!(t > t_prev)) return 0.0;
    const double mid = t_prev + (t - t_prev) / 2.0;
    const long a = count_le(t_prev), b = count_le(mid), c = count_le(t);
    return moment(a, b, t_prev) + moment(b, c, t);
  };

  std::vector<double> cands;
  for (int i = 0; i < n; ++i) {
    const double x = vals[static_cast<size_t>(i)];
    if (x > 0.0 && (i == 0 || x != vals[static_cast<size_t>(i) - 1])) cands.push_back(x);
  }

  StepApproximation out;
  out.c0 = c0;
  out.thresholds.assign(static_cast<size_t>(2 * k) + 1, 0.0);
  for (int i = 1; i < 2 * k; ++i) {
    const double prev = out.thresholds[static_cast<size_t>(i) - 1];
    auto first = std::upper_bound(cands.begin(), cands.end(), prev);
    auto found = std::partition_point(
        first, cands.end(), [&](double t) { return segment_mass(prev, t) < c0; });
    out.thresholds[static_cast<size_t>(i)] = (found == cands.end()) ? top : *found;
  }
  out.thresholds.back() = top;

  out.segment_masses.assign(static_cast<size_t>(2 * k), 0.0);
  for (int i = 1; i <= 2 * k; ++i) {
    const double m = segment_mass(out.thresholds[static_cast<size_t>(i) - 1],
                                  out.thresholds[static_cast<size_t>(i)]);
    out.segment_masses[static_cast<size_t>(i) - 1] = m;
    out.overshoot = std::max(out.overshoot, m - c0);
  }

  out.g.resize(f.size());
  double err = 0.0;
  for (int v = 0; v < n; ++v) {
    out.g[static_cast<size_t>(v)] = quantize(out.thresholds, f[static_cast<size_t>(v)]);
    const double d = f[static_cast<size_t>(v)] - out.g[static_cast<size_t>(v)];
    err += g.mu(v) * d * d;
  }
  out.approx_error_sq = err;
  return out;
}

InequalityReport step_error_bound_check(const MeasuredGraph& g, const VertexFunction& f,
                                        const StepApproximation& step, int k, double lambda_k) {
  InequalityReport r;
  r.name = "step-approximation";
  r.k = k;
  r.lhs = step.approx_error_sq;
  r.rhs = 2.0 * dirichlet_energy(g, f) / lambda_k + 2.0 * k * step.overshoot;
  r.constants["c0"] = step.c0;
  r.constants["overshoot"] = step.overshoot;
  r.finalize();
  return r;
}

ImprovedCheegerCertificate functional_certificate(const MeasuredGraph& g, const VertexFunction& f,
                                                  int k, const Spectrum& spectrum) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (k >= static_cast<int>(spectrum.eigenvalues.size()))
    throw Error(ErrorCode::KTooLarge, "spectrum does not reach the requested index");
  const double lambda_k = spectrum.eigenvalues[static_cast<size_t>(k)];
  if (!(lambda_k > 0.0))
    throw Error(ErrorCode::DegenerateSpectrum, "eigenvalue at the requested index is not positive");

  ImprovedCheegerCertificate cert;
  cert.k = k;
  cert.lambda_k = lambda_k;
  cert.step = build_thresholds(g, f, k, lambda_k);
  cert.rayleigh = rayleigh_quotient(g, f);
  cert.f_norm_sq = l2_norm_sq(g, f);
  cert.witness = sweep_phi(g, f);
  cert.phi_f = cert.witness.phi;
  cert.intermediate_rhs = 8.0 * k * std::sqrt(cert.rayleigh) *
                          std::sqrt(cert.step.approx_error_sq / cert.f_norm_sq);
  cert.rhs = constants::improved_cheeger() * k * cert.rayleigh / std::sqrt(lambda_k);
  cert.pass = InequalityReport::passes(cert.phi_f, cert.rhs);
  return cert;
}

MultiwayCertificate higher_order_certificate(const MeasuredGraph& g, int k, int l,
                                             const std::vector<VertexFunction>& fns,
                                             const Spectrum& spectrum) {
  if (k < 1 || l < 1) throw Error(ErrorCode::InvalidArgument, "k and l must be at least 1");
  if (static_cast<int>(fns.size()) != k + 1)
    throw Error(ErrorCode::InvalidArgument, "need exactly k+1 functions");
  const int top_index = std::max(k, l);
  if (top_index >= static_cast<int>(spectrum.eigenvalues.size()))
    throw Error(ErrorCode::KTooLarge, "spectrum does not reach the requested index");

  const int n = g.vertex_count();
  std::vector<std::uint8_t> owned(static_cast<size_t>(n), 0);
  for (const VertexFunction& f : fns) {
    check_function(g, f);
    for (int v = 0; v < n; ++v) {
      const double x = f[static_cast<size_t>(v)];
      if (x < 0.0) throw Error(ErrorCode::NegativeInput, "functions must be nonnegative");
      if (x > 0.0) {
        if (owned[static_cast<size_t>(v)])
          throw Error(ErrorCode::NotDisjoint, "supports overlap");
        owned[static_cast<size_t>(v)] = 1;
      }
    }
  }

  MultiwayCertificate cert;
  cert.k = k;
  cert.l = l;
  cert.lambda_l = spectrum.eigenvalues[static_cast<size_t>(l)];
  cert.hk_upper = 0.0;
  cert.max_rayleigh = 0.0;
  for (const VertexFunction& f : fns) {
    cert.parts.push_back(functional_certificate(g, f, l, spectrum));
    const ImprovedCheegerCertificate& part = cert.parts.back();
    cert.hk_upper = std::max(cert.hk_upper, part.phi_f);
    cert.max_rayleigh = std::max(cert.max_rayleigh, part.rayleigh);
  }
  cert.rhs = constants::improved_cheeger() * l * cert.max_rayleigh / std::sqrt(cert.lambda_l);
  const double lambda_k = spectrum.eigenvalues[static_cast<size_t>(k)];
  const double denom =
      l * std::pow(static_cast<double>(k), 6.0) * lambda_k / std::sqrt(cert.lambda_l);
  cert.empirical_c = denom > 0.0 ? cert.hk_upper / denom : 0.0;
  cert.pass = InequalityReport::passes(cert.hk_upper, cert.rhs);
  return cert;
}

nlohmann::json to_json(const CutCertificate& c) {
  nlohmann::json members = nlohmann::json::array();
  for (size_t v = 0; v < c.members.size(); ++v)
    if (c.members[v]) members.push_back(static_cast<int>(v));
  return nlohmann::json{{"vertices", std::move(members)},
                        {"mass", c.mass},
                        {"boundary", c.boundary},
                        {"phi", c.phi},
                        {"threshold", c.threshold}};
}

nlohmann::json to_json(const StepApproximation& s) {
  return nlohmann::json{{"thresholds", s.thresholds},
                        {"c0", s.c0},
                        {"segment_masses", s.segment_masses},
                        {"overshoot", s.overshoot},
                        {"approx_error_sq", s.approx_error_sq}};
}

nlohmann::json to_json(const ImprovedCheegerCertificate& c) {
  return nlohmann::json{{"k", c.k},
                        {"phi", c.phi_f},
                        {"rayleigh", c.rayleigh},
                        {"lambda_k", c.lambda_k},
                        {"f_norm_sq", c.f_norm_sq},
                        {"intermediate_rhs", c.intermediate_rhs},
                        {"rhs", c.rhs},
                        {"pass", c.pass},
                        {"witness", to_json(c.witness)},
                        {"step", to_json(c.step)}};
}

nlohmann::json to_json(const MultiwayCertificate& c) {
  nlohmann::json parts = nlohmann::json::array();
  for (const ImprovedCheegerCertificate& p : c.parts) parts.push_back(to_json(p));
  return nlohmann::json{{"k", c.k},
                        {"l", c.l},
                        {"hk_upper", c.hk_upper},
                        {"max_rayleigh", c.max_rayleigh},
                        {"lambda_l", c.lambda_l},
                        {"rhs", c.rhs},
                        {"empirical_c", c.empirical_c},
                        {"pass", c.pass},
                        {"parts", std::move(parts)}};
}

}  // namespace speclab
