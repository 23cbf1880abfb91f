#pragma once

#include <vector>

#include "speclab/graph.hpp"

namespace speclab {

// Flat torus R^dim / Gamma with side lengths (a, ..., a, a^{-(dim-1)}), so the
// volume is 1 for every a in (0,1). dim == 1 is the circle of circumference a.
struct TorusSpec {
  int dim = 2;
  double a = 0.5;
  std::vector<int> counts;        // explicit per-dimension resolutions (each >= 3)
  double points_per_unit = 16.0;  // used when counts is empty; at least 8 per dimension
  long long max_vertices = 1 << 20;
};

std::vector<double> torus_sides(int dim, double a);

// Cycle discretization: mu = 1/N, w = N/a^2, p = 1/a, ell = a/N.
MeasuredGraph circle_graph(double a, int n_points);

// Grid discretization with uniform mu = 1/prod(N_i); an edge along dimension i
// has w = mu / h_i^2, p = density * prod_{j != i} h_j, ell = h_i, where
// h_i = L_i / N_i and density = 1 / prod(L_j).
MeasuredGraph torus_graph(const TorusSpec& spec);

// lambda_0..lambda_k of the circle of circumference a: 0 then 4 pi^2 m^2 / a^2
// with multiplicity two.
std::vector<double> circle_exact_spectrum(double a, int k_max);

// k_max+1 smallest eigenvalues 4 pi^2 |gamma|^2 over the dual lattice
// (a^{-1} Z)^{dim-1} x a^{dim-1} Z, enumerated inside a ball whose radius
// doubles until the answer is certified complete.
std::vector<double> torus_exact_spectrum(int dim, double a, int k_max);

struct RatioWitness {
  int k = 0;
  double ratio = 0.0;        // lambda_k / lambda_1 = a^{-2 dim}
  double lower_bound = 0.0;  // k^2 / 9
};

// Witness index k = 2 floor(a^{-dim}) + 1 at which the eigenvalue ratio of the
// thin torus reaches a^{-2 dim} >= k^2 / 9.
RatioWitness ratio_witness(int dim, double a);

}  // namespace speclab
