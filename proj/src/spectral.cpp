#include "latspec/spectral.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace latspec {

SparseSymmetricOperator assemble_dirichlet_laplacian(const Config &X) {
  const int d = X.dim();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(X.size() * static_cast<std::size_t>(2 * d + 1));
  for (std::size_t i = 0; i < X.size(); ++i) {
    trips.emplace_back(static_cast<int>(i), static_cast<int>(i), 2.0 * d);
    for (int k = 0; k < d; ++k) {
      if (auto j = X.index_of(X[i] + Site::unit(k))) {
        trips.emplace_back(static_cast<int>(i), static_cast<int>(*j), -1.0);
        trips.emplace_back(static_cast<int>(*j), static_cast<int>(i), -1.0);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(X.size());
  SparseMatrix A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return {X, std::move(A)};
}

namespace {

// Column 0 is all ones; column k > 0 a fixed oscillating pattern.
Eigen::VectorXd start_pattern(Eigen::Index n, Eigen::Index k) {
  Eigen::VectorXd v(n);
  if (k == 0) return v.setOnes();
  const double freq = 0.7 + 0.6 * static_cast<double>(k);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::cos(freq * static_cast<double>(i) + 0.5 * static_cast<double>(k));
  return v;
}

// Two modified Gram-Schmidt sweeps in the B inner product. A column that
// degenerates is replaced by its start pattern once; false if that fails too.
bool b_orthonormalize(Eigen::MatrixXd &W, const SparseMatrix *B) {
  auto b_norm = [&](const Eigen::VectorXd &w) { return std::sqrt(std::max(0.0, B ? w.dot(*B * w) : w.squaredNorm())); };
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (Eigen::Index k = 0; k < W.cols(); ++k) {
      for (int attempt = 0;; ++attempt) {
        Eigen::VectorXd w = W.col(k);
        const double before = b_norm(w);
        for (Eigen::Index j = 0; j < k; ++j) {
          const Eigen::VectorXd Bj = B ? Eigen::VectorXd(*B * W.col(j)) : Eigen::VectorXd(W.col(j));
          w -= Bj.dot(w) * W.col(j);
        }
        const double nrm = b_norm(w);
        if (std::isfinite(nrm) && nrm > 1e-12 * before && nrm > 1e-300) {
          W.col(k) = w / nrm;
          break;
        }
        if (attempt > 0) return false;
        W.col(k) = start_pattern(W.rows(), k);
      }
    }
  }
  return true;
}

} // namespace

Eigenpair smallest_eigenpair(const SparseMatrix &A, const SolverOptions &opts, const SparseMatrix *B) {
  const Eigen::Index n = A.rows();
  if (n == 0 || A.cols() != n) throw SolverError("eigensolver needs a nonempty square matrix", 0, 0);
  if (B && (B->rows() != n || B->cols() != n)) throw SolverError("mass matrix shape mismatch", 0, 0);
  if (!(opts.tol > 0)) throw SolverError("tolerance must be positive", 0, 0);

  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> chol(A);
  if (chol.info() != Eigen::Success) throw SolverError("operator is not positive definite", 0, 0);

  auto apply_B = [&](const Eigen::MatrixXd &V) -> Eigen::MatrixXd { return B ? Eigen::MatrixXd(*B * V) : V; };

  const Eigen::Index p = std::min<Eigen::Index>(n, std::max(1, opts.block_size));
  Eigen::MatrixXd V(n, p);
  for (Eigen::Index k = 0; k < p; ++k) V.col(k) = start_pattern(n, k);

  Eigen::VectorXd theta(p);
  Eigen::VectorXd residual(p);
  double prev_theta2 = std::numeric_limits<double>::quiet_NaN();
  int it = 0;
  bool converged = false;
  for (it = 1; it <= opts.max_iterations; ++it) {
    Eigen::MatrixXd W = chol.solve(apply_B(V));
    if (!b_orthonormalize(W, B))
      throw SolverError("inverse iteration broke down", it, std::numeric_limits<double>::infinity());
    Eigen::MatrixXd H = W.transpose() * (A * W);
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(H);
    theta = ritz.eigenvalues();
    V = W * ritz.eigenvectors();

    const Eigen::MatrixXd R = A * V - apply_B(V) * theta.asDiagonal();
    for (Eigen::Index k = 0; k < p; ++k) residual[k] = R.col(k).norm() / V.col(k).norm();

    const bool first_ok = residual[0] <= opts.tol;
    bool second_ok = true;
    if (p > 1) {
      second_ok = residual[1] <= opts.tol ||
                  (std::isfinite(prev_theta2) && std::abs(theta[1] - prev_theta2) <= opts.tol * std::abs(theta[1]));
      prev_theta2 = theta[1];
    }
    if (first_ok && second_ok) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    if (residual[0] > opts.tol)
      throw SolverError("eigensolver did not converge after " + std::to_string(opts.max_iterations) +
                            " iterations (best residual " + std::to_string(residual[0]) + ")",
                        opts.max_iterations, residual[0]);
    it = opts.max_iterations;
  }

  Eigenpair out;
  out.mu = theta[0];
  out.gap = p > 1 ? theta[1] - theta[0] : std::numeric_limits<double>::infinity();
  out.iterations = it;
  Eigen::VectorXd v = V.col(0);
  v /= v.norm();
  if (v.sum() < 0) v = -v;
  v = v.cwiseAbs();
  out.vector = std::move(v);
  const Eigen::VectorXd r = A * out.vector - (B ? Eigen::VectorXd(*B * out.vector) : out.vector) * out.mu;
  out.residual = r.norm();
  return out;
}

EigenResult lambda_N(const Config &X, const SolverOptions &opts) {
  const auto op = assemble_dirichlet_laplacian(X);
  const auto pair = smallest_eigenpair(op.matrix, opts);
  const double N = static_cast<double>(X.size());
  EigenResult res;
  res.n = X.size();
  res.dim = X.dim();
  res.mu_min = pair.mu;
  res.lambda_N = std::pow(N, 2.0 / X.dim()) * pair.mu;
  res.gap = pair.gap;
  res.residual = pair.residual;
  res.iterations = pair.iterations;
  const Eigen::VectorXd u = pair.vector * std::sqrt(N);
  res.eigenfunction = LatticeFunction(X, std::span<const double>(u.data(), static_cast<std::size_t>(u.size())));
  return res;
}

double scaled_energy(const LatticeFunction &u, std::size_t N) {
  const int d = u.dim();
  return std::pow(static_cast<double>(N), -static_cast<double>(d - 2) / d) * u.dirichlet_energy();
}

double rayleigh_value(const LatticeFunction &u, std::size_t N) {
  return scaled_energy(u, N) / (u.sum_squares() / static_cast<double>(N));
}

CubeCompetitor cube_competitor_bound(std::size_t N, int dim) {
  check_dim(dim);
  if (N == 0) throw LatticeError("cube competitor needs N >= 1");
  auto ipow = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  int k = 0;
  while (ipow(2 * (k + 1) + 1, dim) <= static_cast<std::int64_t>(N)) ++k;

  auto shell = [&](const Site &s) {
    int l = 0;
    for (int a = 0; a < dim; ++a) l = std::max(l, std::abs(s[a]));
    return l;
  };

  // Cube sites, then the padding from shell k+1 in lexicographic order.
  std::vector<Site> sites, pad;
  const int reach = k + 1;
  Site p;
  for (int a = 0; a < dim; ++a) p[a] = -reach;
  while (true) {
    (shell(p) <= k ? sites : pad).push_back(p);
    int a = 0;
    while (a < dim && p[a] == reach) {
      p[a] = -reach;
      ++a;
    }
    if (a == dim) break;
    ++p[a];
  }
  const std::size_t cube_n = sites.size();
  std::sort(pad.begin(), pad.end());
  sites.insert(sites.end(), pad.begin(), pad.begin() + static_cast<std::ptrdiff_t>(N - cube_n));

  const double Nd = static_cast<double>(N);
  const double scale = std::pow(Nd, -static_cast<double>(dim - 2) / dim);
  CubeCompetitor out{Config(dim, sites), LatticeFunction(dim), k, 0.0};

  std::vector<LatticeFunction::Entry> entries;
  if (k == 0) {
    // The cone profile vanishes identically on a single site; use the
    // normalized point mass instead.
    entries.emplace_back(Site{}, std::sqrt(Nd));
    out.energy = scale * 2.0 * dim * Nd;
  } else {
    double profile_sq = 0;
    for (int l = 0; l <= k; ++l) {
      const double count = l == 0 ? 1.0 : static_cast<double>(ipow(2 * l + 1, dim) - ipow(2 * l - 1, dim));
      profile_sq += count * static_cast<double>((k - l) * (k - l));
    }
    double edges = 0;
    for (int l = 0; l < k; ++l) edges += 2.0 * dim * static_cast<double>(ipow(2 * l + 1, dim - 1));
    const double C = std::sqrt(Nd / profile_sq);
    for (std::size_t i = 0; i < cube_n; ++i) entries.emplace_back(sites[i], C * (k - shell(sites[i])));
    out.energy = scale * C * C * edges;
  }
  for (std::size_t i = (k == 0 ? 1 : cube_n); i < sites.size(); ++i) entries.emplace_back(sites[i], 0.0);
  out.u = LatticeFunction(dim, std::move(entries));
  return out;
}

} // namespace latspec
