#include "speclab/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>

namespace speclab {

namespace {

constexpr int kDenseCutoff = 1500;
constexpr double kResidualTol = 1e-9;

Eigen::SparseMatrix<double> symmetrized_operator(const MeasuredGraph& g) {
  const int n = g.vertex_count();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(4 * g.edge_count() + n));
  std::vector<double> diag(static_cast<size_t>(n), 0.0);
  for (const Edge& e : g.edges()) {
    diag[static_cast<size_t>(e.u)] += e.w;
    diag[static_cast<size_t>(e.v)] += e.w;
    const double off = -e.w / std::sqrt(g.mu(e.u) * g.mu(e.v));
    if (e.w != 0.0) {
      trips.emplace_back(e.u, e.v, off);
      trips.emplace_back(e.v, e.u, off);
    }
  }
  for (int v = 0; v < n; ++v) trips.emplace_back(v, v, diag[static_cast<size_t>(v)] / g.mu(v));
  Eigen::SparseMatrix<double> s(n, n);
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

double inf_norm(const Eigen::SparseMatrix<double>& s) {
  double best = 0.0;
  Eigen::VectorXd row = Eigen::VectorXd::Zero(s.rows());
  for (int k = 0; k < s.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it)
      row[it.row()] += std::abs(it.value());
  for (int i = 0; i < row.size(); ++i) best = std::max(best, row[i]);
  return best;
}

void sign_normalize(Eigen::VectorXd& x) {
  const double maxabs = x.cwiseAbs().maxCoeff();
  if (maxabs == 0.0) return;
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > 1e-12 * maxabs) {
      if (x[i] < 0.0) x = -x;
      return;
    }
  }
}

struct EigenPair {
  double lambda;
  Eigen::VectorXd x;  // coordinates of the symmetrized problem
};

// Shift-inverted Lanczos with full reorthogonalization against both the
// current Krylov basis and previously converged vectors. Degenerate
// eigenvalues are picked up one copy per restart; a final confirming restart
// checks that nothing below the wanted window was missed.
std::vector<EigenPair> lanczos_smallest(const Eigen::SparseMatrix<double>& s, int want,
                                        int* iterations_out) {
  const int n = static_cast<int>(s.rows());
  const double scale = std::max(inf_norm(s), 1e-30);
  double mean_diag = 0.0;
  for (int i = 0; i < n; ++i) mean_diag += s.coeff(i, i);
  mean_diag /= n;
  const double shift = std::max(1e-3 * mean_diag, 1e-12 * scale);

  Eigen::SparseMatrix<double> p = s;
  for (int i = 0; i < n; ++i) p.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(p);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "factorization of the shifted operator failed");

  std::mt19937_64 rng(0x53504543u);  // fixed seed: deterministic runs
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_vector = [&]() {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    return v;
  };

  std::vector<EigenPair> converged;
  auto project_out_converged = [&](Eigen::VectorXd& v) {
    for (const EigenPair& c : converged) v -= (c.x.dot(v)) * c.x;
  };
  auto sorted_lambda = [&](size_t idx) {
    std::vector<double> ls;
    ls.reserve(converged.size());
    for (const EigenPair& c : converged) ls.push_back(c.lambda);
    std::sort(ls.begin(), ls.end());
    return ls[idx];
  };

  const long long budget = 5LL * std::max(n, 64);
  long long total_iters = 0;
  int empty_streak = 0;

  while (true) {
    const int remaining = n - static_cast<int>(converged.size());
    if (remaining <= 0) break;

    Eigen::VectorXd v = random_vector();
    project_out_converged(v);
    double vn = v.norm();
    if (vn < 1e-12) {
      ++empty_streak;
      if (empty_streak > 3) break;
      continue;
    }
    v /= vn;

    const int m_cap = std::min(remaining, std::max(2 * want + 20, 40));
    std::vector<Eigen::VectorXd> basis{v};
    std::vector<double> alpha, beta;
    const int need_here = std::max(1, want - static_cast<int>(converged.size()) + 1);

    Eigen::MatrixXd ritz_vecs;
    Eigen::VectorXd ritz_vals;
    int usable = 0;
    bool breakdown = false;

    for (int j = 0; j < m_cap; ++j) {
      if (++total_iters > budget)
        throw Error(ErrorCode::ConvergenceFailure,
                    "iterative eigensolver exceeded the iteration budget");
      Eigen::VectorXd w = solver.solve(basis[static_cast<size_t>(j)]);
      alpha.push_back(basis[static_cast<size_t>(j)].dot(w));
      w -= alpha[static_cast<size_t>(j)] * basis[static_cast<size_t>(j)];
      if (j > 0) w -= beta[static_cast<size_t>(j - 1)] * basis[static_cast<size_t>(j - 1)];
      for (int pass = 0; pass < 2; ++pass) {
        for (const Eigen::VectorXd& b : basis) w -= (b.dot(w)) * b;
        project_out_converged(w);
      }
      const double bn = w.norm();

      // Ritz values of the tridiagonal section.
      const int dim = j + 1;
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) t(i, i) = alpha[static_cast<size_t>(i)];
      for (int i = 0; i + 1 < dim; ++i) t(i, i + 1) = t(i + 1, i) = beta[static_cast<size_t>(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(t);
      ritz_vals = tes.eigenvalues();  // ascending; largest theta = smallest lambda
      ritz_vecs = tes.eigenvectors();
      const double theta_scale = std::max(ritz_vals.cwiseAbs().maxCoeff(), 1e-30);
      usable = 0;
      for (int r = dim - 1; r >= 0; --r) {
        const double bound = bn * std::abs(ritz_vecs(dim - 1, r));
        if (bound <= 1e-12 * theta_scale)
          ++usable;
        else
          break;
      }
      if (usable >= std::min(need_here, dim) && j + 1 >= std::min(need_here, remaining)) break;
      if (bn <= 1e-13) {
        breakdown = true;
        usable = dim;
        break;
      }
      beta.push_back(bn);
      basis.push_back(w / bn);
    }
    (void)breakdown;

    // Harvest the leading Ritz pairs that meet the true residual tolerance.
    int added = 0;
    const int dim = static_cast<int>(alpha.size());
    const int harvest_cap = std::min(dim, need_here + 2);
    for (int c = 0; c < std::min(usable, harvest_cap); ++c) {
      const int col = dim - 1 - c;
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < dim; ++i) x += ritz_vecs(i, col) * basis[static_cast<size_t>(i)];
      project_out_converged(x);
      const double xn = x.norm();
      if (xn < 0.1) continue;  // direction already represented
      x /= xn;
      const double lam = x.dot(s * x);
      const double res = (s * x - lam * x).norm();
      if (res <= kResidualTol * std::max(1.0, scale)) {
        converged.push_back({lam, x});
        ++added;
      }
    }

    if (static_cast<int>(converged.size()) >= want) {
      // Confirming restart: if this cycle found nothing new below the wanted
      // window, the window is complete.
      if (added == 0) break;
      bool improves = false;
      const double cutoff = sorted_lambda(static_cast<size_t>(want - 1));
      for (int c = 0; c < added; ++c) {
        if (converged[converged.size() - 1 - static_cast<size_t>(c)].lambda <
            cutoff - 1e-12 * std::max(1.0, scale))
          improves = true;
      }
      if (!improves && static_cast<int>(converged.size()) >= want + 1) break;
      if (!improves && remaining - added <= 0) break;
      continue;
    }
    if (added == 0) {
      ++empty_streak;
      if (empty_streak > 5)
        throw Error(ErrorCode::ConvergenceFailure, "iterative eigensolver stalled");
    } else {
      empty_streak = 0;
    }
  }

  if (static_cast<int>(converged.size()) < want)
    throw Error(ErrorCode::ConvergenceFailure, "iterative eigensolver found too few pairs");

  std::sort(converged.begin(), converged.end(),
            [](const EigenPair& a, const EigenPair& b) { return a.lambda < b.lambda; });
  converged.resize(static_cast<size_t>(want));
  if (iterations_out) *iterations_out = static_cast<int>(total_iters);
  return converged;
}

}  // namespace

SpectrumMethod spectrum_method_from_string(const std::string& s) {
  if (s == "dense") return SpectrumMethod::Dense;
  if (s == "iterative") return SpectrumMethod::Iterative;
  if (s == "auto" || s.empty()) return SpectrumMethod::Auto;
  throw Error(ErrorCode::InvalidArgument, "unknown spectrum method '" + s + "'");
}

const char* spectrum_method_name(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::Dense: return "dense";
    case SpectrumMethod::Iterative: return "iterative";
    case SpectrumMethod::Auto: return "auto";
  }
  return "unknown";
}

Spectrum compute_spectrum(const MeasuredGraph& g, int k_max, SpectrumMethod method) {
  const int n = g.vertex_count();
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be nonnegative");
  if (k_max >= n)
    throw Error(ErrorCode::KTooLarge, "k_max " + std::to_string(k_max) + " needs more than " +
                                          std::to_string(n) + " vertices");
  SpectrumMethod chosen = method;
  if (chosen == SpectrumMethod::Auto)
    chosen = n < kDenseCutoff ? SpectrumMethod::Dense : SpectrumMethod::Iterative;

  const Eigen::SparseMatrix<double> s = symmetrized_operator(g);
  Spectrum result;
  result.method_used = chosen;

  std::vector<EigenPair> pairs;
  if (chosen == SpectrumMethod::Dense) {
    Eigen::MatrixXd dense(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
    for (int i = 0; i <= k_max; ++i) pairs.push_back({es.eigenvalues()[i], es.eigenvectors().col(i)});
  } else {
    pairs = lanczos_smallest(s, k_max + 1, &result.iterations);
  }

  // Map back to the generalized problem: f = M^{-1/2} x, mu-orthonormal.
  result.eigenvalues.reserve(pairs.size());
  result.eigenfunctions.reserve(pairs.size());
  for (EigenPair& pr : pairs) {
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = pr.x[i] / std::sqrt(g.mu(i));
    sign_normalize(f);
    // Pencil residual ||L f - lambda M f||_2 (L f = D^{1/2} S x).
    Eigen::VectorXd rs = s * pr.x - pr.lambda * pr.x;
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ri = std::sqrt(g.mu(i)) * rs[i];
      res += ri * ri;
    }
    result.max_residual = std::max(result.max_residual, std::sqrt(res));
    result.eigenvalues.push_back(pr.lambda);
    result.eigenfunctions.emplace_back(f.data(), f.data() + n);
  }
  return result;
}

std::pair<VertexFunction, VertexFunction> eigenfunction_split(const MeasuredGraph& g,
                                                              const VertexFunction& f,
                                                              double lambda) {
  check_function(g, f);
  const int n = g.vertex_count();
  double maxabs = 0.0;
  for (double v : f) maxabs = std::max(maxabs, std::abs(v));
  if (maxabs == 0.0) throw Error(ErrorCode::ZeroFunction, "cannot split the zero function");

  // Residual check against the supplied eigenvalue.
  Eigen::VectorXd lf = Eigen::VectorXd::Zero(n);
  for (const Edge& e : g.edges()) {
    const double d = f[static_cast<size_t>(e.u)] - f[static_cast<size_t>(e.v)];
    lf[e.u] += e.w * d;
    lf[e.v] -= e.w * d;
  }
  double res = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double mi = lambda * g.mu(i) * f[static_cast<size_t>(i)];
    res += (lf[i] - mi) * (lf[i] - mi);
    scale += lf[i] * lf[i] + mi * mi;
  }
  if (std::sqrt(res) > 1e-7 * std::max(std::sqrt(scale), 1e-30))
    throw Error(ErrorCode::NotAnEigenfunction,
                "residual check failed for the supplied eigenvalue");

  VertexFunction pos(f.size()), neg(f.size());
  bool has_pos = false, has_neg = false;
  for (size_t i = 0; i < f.size(); ++i) {
    pos[i] = std::max(f[i], 0.0);
    neg[i] = std::max(-f[i], 0.0);
    if (pos[i] > 1e-14 * maxabs) has_pos = true;
    if (neg[i] > 1e-14 * maxabs) has_neg = true;
  }
  if (!has_pos || !has_neg)
    throw Error(ErrorCode::OneSidedFunction, "eigenfunction does not change sign");
  return {pos, neg};
}

}  // namespace speclab
