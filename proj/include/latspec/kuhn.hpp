#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/lattice_function.hpp"
#include "latspec/spectral.hpp"

namespace latspec {

using RealPoint = std::array<double, kMaxDim>;

/// T_pi(z) = z + {x : 1 >= x_{pi[0]} >= x_{pi[1]} >= ... >= x_{pi[d-1]} >= 0}.
/// Axis indices in perm are 0-based.
struct KuhnSimplex {
  Site base;
  std::array<std::int8_t, kMaxDim> perm{};
  int dim = 0;

  /// base, base + e_{pi[0]}, base + e_{pi[0]} + e_{pi[1]}, ...
  std::vector<Site> vertices() const;
  /// Barycentric coordinates of x in vertex order.
  std::vector<double> barycentric(const RealPoint &x) const;

  friend auto operator<=>(const KuhnSimplex &, const KuhnSimplex &) = default;
  friend bool operator==(const KuhnSimplex &, const KuhnSimplex &) = default;
};

double factorial(int n);

/// The (d+1)! simplices having i as a vertex.
std::vector<KuhnSimplex> simplices_at_vertex(const Site &i, int dim);
/// The d! simplices having [i, i + e_k] as an edge.
std::vector<KuhnSimplex> simplices_at_edge(const Site &i, int k, int dim);
/// Simplex containing x: base floor(x), perm sorting the fractional parts in
/// decreasing order, equal parts kept in axis order.
KuhnSimplex locate(const RealPoint &x, int dim);

/// The union of all Kuhn simplices touching a site of X.
class KuhnMesh {
public:
  explicit KuhnMesh(const Config &X);

  int dim() const { return config_.dim(); }
  const Config &config() const { return config_; }
  std::span<const KuhnSimplex> simplices() const { return simplices_; }
  std::span<const Site> vertices() const { return vertices_; }
  /// Vertex indices of simplex s, in the simplex's vertex order.
  std::span<const std::uint32_t> simplex_vertices(std::size_t s) const;
  /// True for vertices outside X (clamped to zero in the FEM space).
  bool is_clamped(std::size_t vertex) const { return !config_.contains(vertices_[vertex]); }
  bool contains(const KuhnSimplex &s) const;

  std::size_t simplex_count() const { return simplices_.size(); }
  /// #simplices / d!.
  double measure() const;

private:
  Config config_;
  std::vector<KuhnSimplex> simplices_;
  std::vector<Site> vertices_;
  std::vector<std::uint32_t> incidence_;
};

KuhnMesh zeta(const Config &X);

/// Piecewise-affine interpolant on the Kuhn triangulation. Only simplices of
/// zeta(supp u) are stored; it vanishes everywhere else.
class AffineInterpolant {
public:
  explicit AffineInterpolant(const LatticeFunction &u);

  int dim() const { return dim_; }
  const LatticeFunction &nodal_values() const { return u_; }
  /// Empty when u vanishes identically.
  std::span<const KuhnSimplex> simplices() const { return simplices_; }
  std::span<const RealPoint> gradients() const { return gradients_; }
  double value_at(const RealPoint &x) const;

private:
  int dim_;
  LatticeFunction u_;
  std::vector<KuhnSimplex> simplices_;
  std::vector<RealPoint> gradients_;
};

AffineInterpolant interpolate(const LatticeFunction &u);

/// Integral of |grad u_hat|^2, exact.
double stiffness_energy(const AffineInterpolant &uh);
/// Integral of u_hat^2, exact by the P1 mass rule.
double mass_norm(const AffineInterpolant &uh);

struct FemOperators {
  SparseMatrix stiffness;
  SparseMatrix mass;
};

/// P1 stiffness and mass matrices on the mesh, restricted to the vertices of
/// X (all other vertices clamped to zero). Rows follow the site order of X.
FemOperators assemble_fem(const KuhnMesh &mesh);

struct FemResult {
  double mu = 0;
  LatticeFunction coefficients{1};
  std::size_t n_dof = 0;
  int iterations = 0;
  double residual = 0;
};

/// Smallest mu with K v = mu M v. An upper bound for the Dirichlet
/// eigenvalue of the continuum set zeta(X).
FemResult fem_first_eigenvalue(const KuhnMesh &mesh, const SolverOptions &opts = {});

/// Legacy VTK unstructured grid (ASCII): points, then cells by point index,
/// plus a point field marking the sites of X.
std::string mesh_to_vtk(const KuhnMesh &mesh);
/// {"d":..,"n_simplices":..,"measure":..,"n_dof":..}
std::string mesh_summary_json(const KuhnMesh &mesh);

} // namespace latspec
