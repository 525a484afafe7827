#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Sparse>

#include "latspec/lattice.hpp"
#include "latspec/lattice_function.hpp"

namespace latspec {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Symmetric sparse operator whose rows and columns are indexed by the sites
/// of a configuration (row i <-> sites[i]).
struct SparseSymmetricOperator {
  Config sites;
  SparseMatrix matrix;
};

/// Diagonal 2d, -1 on each pair of neighbouring sites of X. Its quadratic
/// form is the unordered-edge Dirichlet energy of functions vanishing off X.
SparseSymmetricOperator assemble_dirichlet_laplacian(const Config &X);

class SolverError : public std::runtime_error {
public:
  SolverError(const std::string &what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

private:
  int iterations_;
  double residual_;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iterations = 20000;
  /// Subspace size. Four vectors keep the gap estimate fast when the second
  /// eigenvalue is (nearly) repeated.
  int block_size = 4;
};

struct Eigenpair {
  double mu = 0;
  Eigen::VectorXd vector;
  /// Second smallest minus smallest; +infinity for 1x1 problems.
  double gap = 0;
  int iterations = 0;
  /// ||A v - mu B v|| / ||v||.
  double residual = 0;
};

/// Smallest eigenpair of the SPD pencil (A, B); B defaults to the identity.
///
/// Block inverse subspace iteration on a sparse Cholesky factor of A with
/// Rayleigh-Ritz after every step. The first vector starts at all-ones, the
/// others from fixed deterministic patterns. The returned vector is
/// scaled to unit Euclidean norm and signed so its entries are nonnegative
/// (entries are replaced by their absolute values, which keeps a ground state
/// a ground state).
Eigenpair smallest_eigenpair(const SparseMatrix &A, const SolverOptions &opts = {},
                             const SparseMatrix *B = nullptr);

struct EigenResult {
  std::size_t n = 0;
  int dim = 0;
  double mu_min = 0;
  double lambda_N = 0;
  double gap = 0;
  double residual = 0;
  int iterations = 0;
  /// Normalized with (1/N) sum u^2 = 1 and nonnegative.
  LatticeFunction eigenfunction{1};
};

/// lambda_N(X) = N^{2/d} mu_min(X).
EigenResult lambda_N(const Config &X, const SolverOptions &opts = {});

/// N^{-(d-2)/d} D(u), the scaled energy of u.
double scaled_energy(const LatticeFunction &u, std::size_t N);

/// Rayleigh value N^{-(d-2)/d} D(u) / ((1/N) sum u^2); an upper bound for
/// lambda_N(X) whenever u vanishes off X.
double rayleigh_value(const LatticeFunction &u, std::size_t N);

/// Cone competitor on the cube [-k, k]^d, (2k+1)^d <= N, padded with zero
/// sites from the next shell so that the configuration has exactly N sites.
struct CubeCompetitor {
  Config config;
  LatticeFunction u;
  int k = 0;
  /// E_N(u), computed from the shell-count closed form.
  double energy = 0;
};

CubeCompetitor cube_competitor_bound(std::size_t N, int dim);

} // namespace latspec
