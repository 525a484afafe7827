#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latspec/kuhn.hpp"
#include "latspec/lattice.hpp"

namespace latspec {

/// First positive zero of J_{d/2-1}: pi/2, j_{0,1}, pi for d = 1, 2, 3.
/// Found by bisection, cached per dimension.
double bessel_first_zero(int dim);
/// Dirichlet eigenvalue of the unit-radius ball, j^2.
double lambda_unit_radius_ball(int dim);
/// Dirichlet eigenvalue of the ball of unit measure, |B_1|^{2/d} j^2.
double lambda_unit_measure_ball(int dim);

struct AsymmetryResult {
  Site best_shift;
  /// min_z #(X delta (B_{r_N} cap Z^d + z)).
  std::int64_t discrete_asym = 0;
  std::size_t cap_size = 0;
  /// |zeta(X) delta B_{r_N}(best_shift)| and its error bound, when requested.
  std::optional<double> continuum_asym;
  std::optional<double> quadrature_error;
};

/// Exact minimum over every lattice shift with nonzero overlap (shifts with
/// zero overlap give N + #cap and are never better). Ties go to the
/// lexicographically smallest shift.
AsymmetryResult discrete_asymmetry(const Config &X);

struct QuadratureOptions {
  /// Absolute; <= 0 selects 1e-6 |zeta(X)|.
  double tol = 0;
  int max_depth = 24;
  /// Straddling simplices allowed at one refinement level.
  std::size_t max_leaves = std::size_t{1} << 20;
};

struct SymmetricDifference {
  double value = 0;
  /// Certified: the true value lies within value +- error.
  double error = 0;
  int depth = 0;
  bool reached_tol = false;
};

/// |zeta(X) delta B_r(z)| by bisection of the simplices that straddle the
/// sphere. Simplices with every vertex in the closed ball count as inside;
/// simplices whose bounding sphere misses the ball count as outside. The
/// ball's share of each remaining simplex is bracketed by two planar cuts
/// (d <= 3; taken as [0, 1] in higher d).
SymmetricDifference continuum_symmetric_difference(const KuhnMesh &mesh, double r, const RealPoint &z,
                                                   const QuadratureOptions &opts = {});

/// Adds the continuum fields at the discrete best shift.
void add_continuum_asymmetry(AsymmetryResult &res, const KuhnMesh &mesh, const QuadratureOptions &opts = {});

struct FkDeficit {
  double deficit = 0;
  double sqrt_deficit = 0;
  /// lambda of the ball with the measure of zeta(X).
  double lambda_ball = 0;
  bool clamped = false;
};

/// (fem_mu - lambda(B)) / lambda(B) with |B| = |zeta(X)|.
FkDeficit fk_deficit(const KuhnMesh &mesh, double fem_mu);

/// N (N^{-1/(2d)} P_N^{1/2} + alpha_N^{1/2} + N^{-1/d}).
double fluctuation_bound_rhs(double N, double P_N, double alpha_N, int dim);

// ---------------------------------------------------------------------------
// Sweeps

enum class ConfigSource { Ball, Local, Oracle };

std::string to_string(ConfigSource s);
ConfigSource parse_config_source(const std::string &s);

struct SweepSpec {
  int dim = 2;
  std::vector<std::size_t> N_values;
  ConfigSource source = ConfigSource::Ball;
  SolverOptions solver;
  /// Local-search budget in eigenvalue evaluations.
  int local_budget = 400;
  /// Also compute the measure, FEM and continuum-asymmetry constants.
  bool chain_constants = false;
  QuadratureOptions quadrature;
  int threads = 1;
};

struct ExperimentRecord {
  std::size_t N = 0;
  int d = 0;
  double lambda_N = 0;
  double alpha_N = 0;
  double P_N = 0;
  std::int64_t perimeter = 0;
  std::int64_t discrete_asym = 0;
  double bound_rhs = 0;
  double fitted_C = 0;
  /// |zeta(X)|, FEM eigenvalue, continuum asymmetry and the derived constants.
  std::optional<double> zeta_measure, fem_mu, continuum_asym, quadrature_error;
  std::optional<double> C_measure, C_fem, C_asym;
  double wall_time = 0;
  /// Empty on success.
  std::string failure;
};

/// One record per requested N, in increasing N. A failing N yields a record
/// carrying only N, d and the failure message.
std::vector<ExperimentRecord> run_experiment(const SweepSpec &spec);
ExperimentRecord run_single(std::size_t N, const SweepSpec &spec);

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0;
  std::size_t points = 0;
};

/// Least squares of log(discrete_asym) on log(N) over successful records
/// with discrete_asym > 0. Throws std::invalid_argument with fewer than two.
ExponentFit fit_exponent(const std::vector<ExperimentRecord> &records);

struct TrendTest {
  double tau = 0;
  double z = 0;
  /// One-sided p-value for an increasing trend.
  double p_value = 1;
  bool increasing = false;
};

/// Mann-Kendall test of y against x (normal approximation, no tie
/// correction), one-sided at level alpha.
TrendTest kendall_trend(const std::vector<double> &x, const std::vector<double> &y, double alpha = 0.05);

/// Header line of the records table.
std::string records_csv_header();
std::string record_to_csv(const ExperimentRecord &r);
/// Inverse of record_to_csv. Throws ParseError.
ExperimentRecord record_from_csv(const std::string &line);

/// Log-log plot of discrete asymmetry against N with the reference slope
/// 1 - 1/(2d).
std::string gnuplot_script(const std::string &csv_name, int dim);

} // namespace latspec
