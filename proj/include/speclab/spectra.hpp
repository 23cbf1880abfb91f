#pragma once

#include <utility>
#include <vector>

#include "speclab/graph.hpp"

namespace speclab {

enum class SpectrumMethod { Dense, Iterative, Auto };

SpectrumMethod spectrum_method_from_string(const std::string& s);
const char* spectrum_method_name(SpectrumMethod m);

struct Spectrum {
  std::vector<double> eigenvalues;             // ascending, size k_max+1
  std::vector<VertexFunction> eigenfunctions;  // mu-orthonormal, sign-normalized
  SpectrumMethod method_used = SpectrumMethod::Dense;
  int iterations = 0;       // iterative path only
  double max_residual = 0;  // max ||L f - lambda M f||_2 over returned pairs
};

// Generalized eigenproblem L f = lambda M f with M = diag(mu). Auto picks
// dense below 1500 vertices, the shift-inverted Lanczos path above.
Spectrum compute_spectrum(const MeasuredGraph& g, int k_max,
                          SpectrumMethod method = SpectrumMethod::Auto);

// Splits an eigenfunction into nonnegative parts (max(f,0), max(-f,0)).
// Verifies the residual for the supplied eigenvalue (NotAnEigenfunction) and
// that both parts are nonzero (OneSidedFunction). Each part satisfies
// R(part) <= lambda on any graph.
std::pair<VertexFunction, VertexFunction> eigenfunction_split(const MeasuredGraph& g,
                                                              const VertexFunction& f,
                                                              double lambda);

}  // namespace speclab
