#pragma once

#include <vector>

#include "speclab/graph.hpp"
#include "speclab/report.hpp"
#include "speclab/spectra.hpp"

namespace speclab {

// Exact minimum of phi over superlevel sets {f > t} of a nonnegative f,
// including the full set (phi = 0) when min f > 0. Incremental sweep over the
// distinct values of f.
CutCertificate sweep_phi(const MeasuredGraph& g, const VertexFunction& f);

// Classic two-sided sweep for a signed function (typically the lambda_1
// eigenfunction): min over t of max(phi({f>t}), phi(complement)). The result
// upper-bounds h_1.
double h1_sweep_upper(const MeasuredGraph& g, const VertexFunction& f,
                      CutCertificate* cut = nullptr);

struct MultiwayCut {
  std::vector<CutCertificate> sets;  // k+1 disjoint nonempty sets
  double value = 0.0;                // max phi over the sets
};

// Exact h_1 by enumeration of the 2^{n-1} bipartitions (the optimum over
// disjoint pairs is attained by a complementary pair). TooLargeForExact
// beyond 16 vertices.
MultiwayCut h1_exact(const MeasuredGraph& g);

// Exact h_k by enumeration of assignments into k+1 labels or none, with
// canonical label order. TooLargeForExact beyond 12 vertices.
MultiwayCut hk_bruteforce(const MeasuredGraph& g, int k);

// Feasible (k+1)-partition from the spectral embedding by eigenfunctions
// 1..k: farthest-point seeding from vertex 0, then mu-weighted Lloyd rounds
// (cap 100), all ties toward lower indices. Value upper-bounds h_k.
MultiwayCut hk_spectral_heuristic(const MeasuredGraph& g, int k, const Spectrum& spectrum);

// For each set: graph distance to the complement (edge lengths if present,
// else hop counts), normalized to max 1 inside the set, zero outside.
// Disjointly supported nonnegative functions for the functional certificates.
std::vector<VertexFunction> disjoint_functions_from_partition(
    const MeasuredGraph& g, const std::vector<std::vector<std::uint8_t>>& sets);

// h1 >= (e-1)/(sqrt(2) e) * sqrt(lambda_1); caller supplies an exact h1.
InequalityReport buser_ledoux_check(double h1_value, double lambda_1);

// h1 >= (e-1)^2/(16 sqrt(2) e^2) * sqrt(lambda_k) / k.
InequalityReport higher_buser_ledoux_check(double h1_value, int k, double lambda_k);

// Reported-only trend row: empirical C = hk_upper / (k sqrt(log(1+k)) h1).
InequalityReport hk_ratio_check(double hk_upper, int k, double h1_value);

nlohmann::json to_json(const MultiwayCut& c);

}  // namespace speclab
