#pragma once

#include <vector>

#include "speclab/graph.hpp"
#include "speclab/report.hpp"

namespace speclab {

struct PartialDiameter {
  double value = 0.0;  // hi - lo
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;   // pushforward mass inside [lo, hi], >= 1 - kappa
};

// Shortest closed interval holding at least 1-kappa of the pushforward mass
// of f; sliding window over the sorted atoms. BadKappa unless 0 < kappa < 1.
PartialDiameter partial_diameter(const MeasuredGraph& g, const VertexFunction& f, double kappa);

struct ObsDiamEstimate {
  double value = 0.0;
  VertexFunction witness;    // certified 1-Lipschitz function attaining it
  std::string witness_kind;  // "distance:<source>" or "coordinate:<dim>"
  PartialDiameter window;
  int candidates = 0;
};

// Lower bound for the observable diameter: max partial diameter over distance
// functions from up to `max_sources` farthest-point-sampled vertices plus
// per-dimension wrapped coordinate distances on model grids. Every candidate
// is verified 1-Lipschitz edge by edge (|f_u - f_v| <= ell_uv); requires edge
// lengths (NoEdgeLengths).
ObsDiamEstimate obs_diameter_lower(const MeasuredGraph& g, double kappa, int max_sources = 64);

// obs_lower <= 152 k log(2/kappa) / sqrt(lambda_k).
InequalityReport cheng_dimension_free_check(double obs_lower, int k, double kappa,
                                            double lambda_k);

// diameter <= sqrt(2 dim (dim+4)) k / sqrt(lambda_k).
InequalityReport cheng_classical_check(double diameter, int dim, int k, double lambda_k);

// Geometric diameter of a model space: a/2 for the circle, half the diagonal
// for the torus.
double model_diameter(const ModelInfo& info);

}  // namespace speclab
