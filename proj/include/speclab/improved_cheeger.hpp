#pragma once

#include <vector>

#include "speclab/graph.hpp"
#include "speclab/report.hpp"
#include "speclab/spectra.hpp"

namespace speclab {

// Nearest threshold to x, ties toward the smaller threshold. `thresholds`
// must be sorted ascending and start at 0; x must be >= 0.
double quantize(const std::vector<double>& thresholds, double x);

// Distance |x - quantize(x)|.
double eta(const std::vector<double>& thresholds, double x);

// Exact integral of eta from 0 to v (piecewise quadratic closed form; a full
// segment [t_i, t_{i+1}] contributes (t_{i+1}-t_i)^2/4).
double h_transform(const std::vector<double>& thresholds, double v);

struct StepApproximation {
  std::vector<double> thresholds;      // 2k+1 values, t_0 = 0, t_{2k} = max f
  double c0 = 0.0;                     // barrier E(f) / (k lambda_k)
  std::vector<double> segment_masses;  // 2k barrier integrals
  double overshoot = 0.0;              // max per-segment excess over c0
  VertexFunction g;                    // quantized f
  double approx_error_sq = 0.0;        // ||f - g||_mu^2 == sum(segment_masses)
};

// Inductive threshold construction. Candidates are the sorted distinct values
// of f; t_i is the first candidate > t_{i-1} whose segment mass
// int_{t_{i-1} < f <= t} |f - psi_{t_{i-1},t}(f)|^2 dmu reaches c0, else
// t_i = max f. The last threshold is always max f; any excess of a segment
// mass over c0 is disclosed through `overshoot`.
StepApproximation build_thresholds(const MeasuredGraph& g, const VertexFunction& f, int k,
                                   double lambda_k);

// ||f - g_k||^2 <= 2 E(f) / lambda_k + 2k * overshoot.
InequalityReport step_error_bound_check(const MeasuredGraph& g, const VertexFunction& f,
                                        const StepApproximation& step, int k, double lambda_k);

struct ImprovedCheegerCertificate {
  int k = 0;
  double phi_f = 0.0;      // exact sweep minimum over superlevel cuts of f
  double rayleigh = 0.0;   // R(f)
  double lambda_k = 0.0;
  double f_norm_sq = 0.0;
  double intermediate_rhs = 0.0;  // 8 k sqrt(R(f)) ||f - g_k|| / ||f||
  double rhs = 0.0;               // 8 sqrt(2) k R(f) / sqrt(lambda_k)
  bool pass = false;              // phi_f <= rhs under the uniform rule
  CutCertificate witness;
  StepApproximation step;
};

// Functional inequality phi(f) <= 8 sqrt(2) k R(f) / sqrt(lambda_k) for
// nonnegative nonzero f, with the step-approximation intermediate recorded.
ImprovedCheegerCertificate functional_certificate(const MeasuredGraph& g, const VertexFunction& f,
                                                  int k, const Spectrum& spectrum);

struct MultiwayCertificate {
  int k = 0;
  int l = 0;
  double hk_upper = 0.0;      // max certified phi(f_i); upper bound for h_k
  double max_rayleigh = 0.0;
  double lambda_l = 0.0;
  double rhs = 0.0;           // 8 sqrt(2) l max_i R(f_i) / sqrt(lambda_l)
  double empirical_c = 0.0;   // hk_upper / (l k^6 lambda_k / sqrt(lambda_l))
  bool pass = false;
  std::vector<ImprovedCheegerCertificate> parts;
};

// Applies the functional certificate with parameter l to each of k+1
// disjointly supported nonnegative functions. The sweep cuts inherit the
// disjointness, so max_i phi(f_i) upper-bounds h_k.
MultiwayCertificate higher_order_certificate(const MeasuredGraph& g, int k, int l,
                                             const std::vector<VertexFunction>& fns,
                                             const Spectrum& spectrum);

nlohmann::json to_json(const CutCertificate& c);
nlohmann::json to_json(const StepApproximation& s);
nlohmann::json to_json(const ImprovedCheegerCertificate& c);
nlohmann::json to_json(const MultiwayCertificate& c);

}  // namespace speclab
