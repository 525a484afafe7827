#pragma once

// Generators and brute-force oracles shared by the test binaries. Nothing
// here calls into the library beyond constructing Config and LatticeFunction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "latspec/lattice.hpp"
#include "latspec/lattice_function.hpp"

namespace testing {

using latspec::Config;
using latspec::LatticeFunction;
using latspec::Site;

inline int uniform_int(std::mt19937_64 &rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double uniform_real(std::mt19937_64 &rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Site random_site(std::mt19937_64 &rng, int dim, int radius) {
  Site s;
  for (int k = 0; k < dim; ++k) s[k] = uniform_int(rng, -radius, radius);
  return s;
}

/// N distinct sites scattered in a box of the given radius (not necessarily
/// connected).
inline Config random_scattered(std::mt19937_64 &rng, int dim, std::size_t N, int radius) {
  if (std::pow(2.0 * radius + 1, dim) < 2.0 * static_cast<double>(N)) radius = static_cast<int>(N);
  std::set<Site> s;
  while (s.size() < N) s.insert(random_site(rng, dim, radius));
  return Config(dim, std::vector<Site>(s.begin(), s.end()));
}

inline std::vector<Site> unit_steps(int dim) {
  std::vector<Site> out;
  for (int k = 0; k < dim; ++k) {
    Site p, m;
    p[k] = 1;
    m[k] = -1;
    out.push_back(p);
    out.push_back(m);
  }
  return out;
}

/// Connected configuration grown by attaching random neighbours.
inline Config random_connected(std::mt19937_64 &rng, int dim, std::size_t N) {
  std::vector<Site> sites{Site{}};
  std::set<Site> in{Site{}};
  const auto steps = unit_steps(dim);
  while (sites.size() < N) {
    const Site base = sites[rng() % sites.size()];
    const Site q = base + steps[rng() % steps.size()];
    if (in.insert(q).second) sites.push_back(q);
  }
  return Config(dim, sites);
}

/// Random nonnegative function on X (some zeros allowed).
inline LatticeFunction random_function(std::mt19937_64 &rng, const Config &X, bool allow_zero = true) {
  std::vector<double> v(X.size());
  for (auto &x : v) x = (allow_zero && rng() % 5 == 0) ? 0.0 : uniform_real(rng, 0.01, 3.0);
  return LatticeFunction(X, v);
}

inline bool adjacent(const Site &a, const Site &b, int dim) {
  int l1 = 0;
  for (int k = 0; k < dim; ++k) l1 += std::abs(a[k] - b[k]);
  return l1 == 1;
}

/// Dense Dirichlet Laplacian built pair by pair: degree 2d on the diagonal,
/// -1 for every adjacent pair.
inline Eigen::MatrixXd dense_laplacian(const Config &X) {
  const auto n = static_cast<Eigen::Index>(X.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = 2.0 * X.dim();
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && adjacent(X[static_cast<std::size_t>(i)], X[static_cast<std::size_t>(j)], X.dim())) A(i, j) = -1.0;
  }
  return A;
}

/// lambda_N by dense symmetric eigendecomposition.
inline double dense_lambda(const Config &X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(X), Eigen::EigenvaluesOnly);
  return std::pow(static_cast<double>(X.size()), 2.0 / X.dim()) * es.eigenvalues()[0];
}

/// Dirichlet energy by explicit enumeration of unordered edges touching the
/// support.
inline double edge_sum(const LatticeFunction &u) {
  const int d = u.dim();
  std::set<std::pair<Site, Site>> edges;
  for (const auto &[p, v] : u.entries())
    for (const auto &s : unit_steps(d)) {
      const Site q = p + s;
      edges.insert(p < q ? std::make_pair(p, q) : std::make_pair(q, p));
    }
  double total = 0;
  for (const auto &[a, b] : edges) {
    const double diff = u(a) - u(b);
    total += diff * diff;
  }
  return total;
}

/// Number of connected N-site configurations up to translation, by growing
/// every (N-1)-site class by one neighbour and deduplicating canonical forms.
inline std::size_t naive_animal_count(int N, int dim) {
  auto canonical = [dim](std::vector<Site> s) {
    Site lo = s.front();
    for (const auto &p : s)
      for (int k = 0; k < dim; ++k) lo[k] = std::min(lo[k], p[k]);
    for (auto &p : s) p = p - lo;
    std::sort(s.begin(), s.end());
    return s;
  };
  std::set<std::vector<Site>> level{{Site{}}};
  const auto steps = unit_steps(dim);
  for (int n = 2; n <= N; ++n) {
    std::set<std::vector<Site>> next;
    for (const auto &shape : level)
      for (const auto &p : shape)
        for (const auto &s : steps) {
          const Site q = p + s;
          if (std::find(shape.begin(), shape.end(), q) != shape.end()) continue;
          auto grown = shape;
          grown.push_back(q);
          next.insert(canonical(grown));
        }
    level = std::move(next);
  }
  return level.size();
}

} // namespace testing
