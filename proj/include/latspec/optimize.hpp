#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/spectral.hpp"

namespace latspec {

struct StructureFlags {
  bool connected = false;
  bool direction_convex = false;
  bool symmetric = false;
  double diameter = 0;
  /// diameter / N^{1/d}.
  double diameter_ratio = 0;
};

StructureFlags verify_structure(const Config &X);

struct MinimizationResult {
  Config best;
  double m_lambda_N = 0;
  /// Every minimizer up to translation (oracle mode only).
  std::vector<Config> minimizers;
  std::string method;
  double alpha_N = 0;
  StructureFlags flags;
  /// lambda_N after every accepted step, starting with the seed (local mode).
  std::vector<double> trace;
  std::size_t evaluations = 0;
};

/// Minimum of lambda_N over every connected N-site configuration. Values
/// within 1e-9 relative of the minimum count as minimizers.
MinimizationResult oracle_minimize(int N, int dim, const SolverOptions &opts = {});

struct LocalSearchOptions {
  /// Budget in eigenvalue evaluations, the seed included.
  std::size_t max_evaluations = 400;
  /// Removal and insertion candidates tried per round; every candidate is
  /// tried when N <= exhaustive_below.
  std::size_t removal_candidates = 8;
  std::size_t insertion_candidates = 8;
  std::size_t exhaustive_below = 64;
  SolverOptions solver;
};

/// Descent from seed: full rearrangement, then single-site relocations,
/// accepting only strict decreases of lambda_N by more than 1e-10.
MinimizationResult local_search(const Config &seed, const LocalSearchOptions &opts = {});

struct BallCompetitor {
  Config config;
  double lambda = 0;
  /// Squared radius of the closed ball B_k cap Z^d kept whole.
  std::int64_t radius_sq = 0;
  std::size_t padding = 0;
  double lambda_ref = 0;
  double lambda_unit_radius = 0;
  /// (lambda - lambda_ref) N^{1/d}.
  double fitted_C = 0;
};

/// Largest origin-centred closed ball cap with at most N sites, padded to N
/// sites by greedy exterior additions that most lower lambda_N.
BallCompetitor ball_competitor(std::size_t N, int dim, const SolverOptions &opts = {});

/// Connected N-site configuration grown from the origin by adding uniformly
/// chosen exterior neighbours.
Config random_connected_config(std::size_t N, int dim, std::mt19937_64 &rng);

} // namespace latspec
