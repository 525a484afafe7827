#include "latspec/kuhn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace latspec {

std::vector<Site> KuhnSimplex::vertices() const {
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(dim + 1));
  Site v = base;
  out.push_back(v);
  for (int m = 0; m < dim; ++m) {
    v = v + Site::unit(perm[static_cast<std::size_t>(m)]);
    out.push_back(v);
  }
  return out;
}

std::vector<double> KuhnSimplex::barycentric(const RealPoint &x) const {
  std::vector<double> lam(static_cast<std::size_t>(dim + 1));
  auto y = [&](int m) {
    const int a = perm[static_cast<std::size_t>(m)];
    return x[static_cast<std::size_t>(a)] - base[a];
  };
  lam[0] = 1.0 - y(0);
  for (int m = 1; m < dim; ++m) lam[static_cast<std::size_t>(m)] = y(m - 1) - y(m);
  lam[static_cast<std::size_t>(dim)] = y(dim - 1);
  return lam;
}

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

namespace {

std::vector<std::array<std::int8_t, kMaxDim>> permutations(int dim) {
  std::array<std::int8_t, kMaxDim> p{};
  for (int k = 0; k < dim; ++k) p[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(k);
  std::vector<std::array<std::int8_t, kMaxDim>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + dim));
  return out;
}

// Sum of e_{pi[0]} .. e_{pi[k-1]}.
Site partial_path(const std::array<std::int8_t, kMaxDim> &perm, int k) {
  Site s;
  for (int m = 0; m < k; ++m) s[perm[static_cast<std::size_t>(m)]] += 1;
  return s;
}

} // namespace

std::vector<KuhnSimplex> simplices_at_vertex(const Site &i, int dim) {
  check_dim(dim);
  std::vector<KuhnSimplex> out;
  for (const auto &perm : permutations(dim))
    for (int k = 0; k <= dim; ++k) out.push_back({i - partial_path(perm, k), perm, dim});
  return out;
}

std::vector<KuhnSimplex> simplices_at_edge(const Site &i, int k, int dim) {
  check_dim(dim);
  if (k < 0 || k >= dim) throw LatticeError("axis index out of range");
  std::vector<KuhnSimplex> out;
  for (const auto &perm : permutations(dim)) {
    const auto m = static_cast<int>(std::find(perm.begin(), perm.begin() + dim, k) - perm.begin());
    out.push_back({i - partial_path(perm, m), perm, dim});
  }
  return out;
}

KuhnSimplex locate(const RealPoint &x, int dim) {
  check_dim(dim);
  KuhnSimplex s;
  s.dim = dim;
  RealPoint frac{};
  for (int k = 0; k < dim; ++k) {
    const double f = std::floor(x[static_cast<std::size_t>(k)]);
    if (!std::isfinite(f) || std::abs(f) > kCoordLimit) throw LatticeError("point outside the supported range");
    s.base[k] = static_cast<std::int32_t>(f);
    frac[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - f;
  }
  for (int k = 0; k < dim; ++k) s.perm[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(k);
  std::stable_sort(s.perm.begin(), s.perm.begin() + dim, [&](std::int8_t a, std::int8_t b) {
    return frac[static_cast<std::size_t>(a)] > frac[static_cast<std::size_t>(b)];
  });
  return s;
}

namespace {

std::vector<KuhnSimplex> star_union(std::span<const Site> sites, int dim) {
  std::vector<KuhnSimplex> out;
  out.reserve(sites.size() * static_cast<std::size_t>(factorial(dim + 1)));
  for (const auto &i : sites) {
    auto star = simplices_at_vertex(i, dim);
    out.insert(out.end(), star.begin(), star.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

KuhnMesh::KuhnMesh(const Config &X) : config_(X) {
  const int d = X.dim();
  simplices_ = star_union(X.sites(), d);
  for (const auto &s : simplices_)
    for (const auto &v : s.vertices()) vertices_.push_back(v);
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

  std::unordered_map<Site, std::uint32_t, SiteHash> index;
  index.reserve(vertices_.size());
  for (std::size_t k = 0; k < vertices_.size(); ++k) index.emplace(vertices_[k], static_cast<std::uint32_t>(k));
  incidence_.reserve(simplices_.size() * static_cast<std::size_t>(d + 1));
  for (const auto &s : simplices_)
    for (const auto &v : s.vertices()) incidence_.push_back(index.at(v));
}

std::span<const std::uint32_t> KuhnMesh::simplex_vertices(std::size_t s) const {
  const auto stride = static_cast<std::size_t>(dim() + 1);
  return std::span<const std::uint32_t>(incidence_).subspan(s * stride, stride);
}

bool KuhnMesh::contains(const KuhnSimplex &s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s);
}

double KuhnMesh::measure() const { return static_cast<double>(simplices_.size()) / factorial(dim()); }

KuhnMesh zeta(const Config &X) { return KuhnMesh(X); }

AffineInterpolant::AffineInterpolant(const LatticeFunction &u) : dim_(u.dim()), u_(u.pruned()) {
  if (u_.size() == 0) return;
  std::vector<Site> supp;
  supp.reserve(u_.size());
  for (const auto &[p, v] : u_.entries()) supp.push_back(p);
  simplices_ = star_union(supp, dim_);
  gradients_.reserve(simplices_.size());
  for (const auto &s : simplices_) {
    const auto verts = s.vertices();
    RealPoint g{};
    for (int m = 0; m < dim_; ++m)
      g[static_cast<std::size_t>(s.perm[static_cast<std::size_t>(m)])] =
          u_(verts[static_cast<std::size_t>(m + 1)]) - u_(verts[static_cast<std::size_t>(m)]);
    gradients_.push_back(g);
  }
}

double AffineInterpolant::value_at(const RealPoint &x) const {
  const auto s = locate(x, dim_);
  const auto lam = s.barycentric(x);
  const auto verts = s.vertices();
  double v = 0;
  for (std::size_t a = 0; a < verts.size(); ++a) v += lam[a] * u_(verts[a]);
  return v;
}

AffineInterpolant interpolate(const LatticeFunction &u) { return AffineInterpolant(u); }

double stiffness_energy(const AffineInterpolant &uh) {
  const int d = uh.dim();
  double total = 0;
  for (const auto &g : uh.gradients())
    for (int k = 0; k < d; ++k) total += g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
  return total / factorial(d);
}

double mass_norm(const AffineInterpolant &uh) {
  const int d = uh.dim();
  const double weight = 1.0 / (factorial(d) * (d + 1) * (d + 2));
  double total = 0;
  for (const auto &s : uh.simplices()) {
    double sum = 0, sq = 0;
    for (const auto &v : s.vertices()) {
      const double x = uh.nodal_values()(v);
      sum += x;
      sq += x * x;
    }
    total += weight * (sq + sum * sum);
  }
  return total;
}

namespace {

// Gradients of the barycentric coordinates on T_pi(z), in vertex order.
std::vector<RealPoint> basis_gradients(const KuhnSimplex &s) {
  const int d = s.dim;
  std::vector<RealPoint> g(static_cast<std::size_t>(d + 1), RealPoint{});
  auto ax = [&](int m) { return static_cast<std::size_t>(s.perm[static_cast<std::size_t>(m)]); };
  g[0][ax(0)] = -1;
  for (int m = 1; m < d; ++m) {
    g[static_cast<std::size_t>(m)][ax(m - 1)] += 1;
    g[static_cast<std::size_t>(m)][ax(m)] -= 1;
  }
  g[static_cast<std::size_t>(d)][ax(d - 1)] = 1;
  return g;
}

} // namespace

FemOperators assemble_fem(const KuhnMesh &mesh) {
  const int d = mesh.dim();
  const Config &X = mesh.config();
  const double vol = 1.0 / factorial(d);
  const double mass_unit = vol / ((d + 1) * (d + 2));

  std::vector<std::int64_t> dof(mesh.vertices().size(), -1);
  for (std::size_t k = 0; k < dof.size(); ++k)
    if (auto j = X.index_of(mesh.vertices()[k])) dof[k] = static_cast<std::int64_t>(*j);

  std::vector<Eigen::Triplet<double>> kt, mt;
  for (std::size_t s = 0; s < mesh.simplex_count(); ++s) {
    const auto verts = mesh.simplex_vertices(s);
    const auto grads = basis_gradients(mesh.simplices()[s]);
    for (std::size_t a = 0; a < verts.size(); ++a) {
      const auto ra = dof[verts[a]];
      if (ra < 0) continue;
      for (std::size_t b = 0; b < verts.size(); ++b) {
        const auto cb = dof[verts[b]];
        if (cb < 0) continue;
        double g = 0;
        for (int k = 0; k < d; ++k) g += grads[a][static_cast<std::size_t>(k)] * grads[b][static_cast<std::size_t>(k)];
        if (g != 0) kt.emplace_back(static_cast<int>(ra), static_cast<int>(cb), vol * g);
        mt.emplace_back(static_cast<int>(ra), static_cast<int>(cb), mass_unit * (a == b ? 2.0 : 1.0));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(X.size());
  FemOperators ops{SparseMatrix(n, n), SparseMatrix(n, n)};
  ops.stiffness.setFromTriplets(kt.begin(), kt.end());
  ops.mass.setFromTriplets(mt.begin(), mt.end());
  ops.stiffness.prune(0.0);
  ops.stiffness.makeCompressed();
  ops.mass.makeCompressed();
  return ops;
}

FemResult fem_first_eigenvalue(const KuhnMesh &mesh, const SolverOptions &opts) {
  const auto ops = assemble_fem(mesh);
  const auto pair = smallest_eigenpair(ops.stiffness, opts, &ops.mass);
  FemResult out;
  out.mu = pair.mu;
  out.n_dof = mesh.config().size();
  out.iterations = pair.iterations;
  out.residual = pair.residual;
  // Scale to unit L2 norm of the interpolant.
  const double mnorm = std::sqrt(pair.vector.dot(ops.mass * pair.vector));
  const Eigen::VectorXd v = pair.vector / mnorm;
  out.coefficients =
      LatticeFunction(mesh.config(), std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
  return out;
}

std::string mesh_to_vtk(const KuhnMesh &mesh) {
  const int d = mesh.dim();
  if (d > 3) throw LatticeError("legacy VTK export supports d <= 3");
  static constexpr int kCellType[] = {0, 3, 5, 10};
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\n";
  os << "Kuhn mesh d=" << d << " n_simplices=" << mesh.simplex_count() << "\n";
  os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.vertices().size() << " double\n";
  for (const auto &v : mesh.vertices()) os << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  const std::size_t m = mesh.simplex_count();
  os << "CELLS " << m << ' ' << m * static_cast<std::size_t>(d + 2) << '\n';
  for (std::size_t s = 0; s < m; ++s) {
    os << d + 1;
    for (auto k : mesh.simplex_vertices(s)) os << ' ' << k;
    os << '\n';
  }
  os << "CELL_TYPES " << m << '\n';
  for (std::size_t s = 0; s < m; ++s) os << kCellType[d] << '\n';
  os << "POINT_DATA " << mesh.vertices().size() << '\n';
  os << "SCALARS in_config int 1\nLOOKUP_TABLE default\n";
  for (std::size_t k = 0; k < mesh.vertices().size(); ++k) os << (mesh.is_clamped(k) ? 0 : 1) << '\n';
  return os.str();
}

std::string mesh_summary_json(const KuhnMesh &mesh) {
  nlohmann::ordered_json j;
  j["d"] = mesh.dim();
  j["n_simplices"] = mesh.simplex_count();
  j["measure"] = mesh.measure();
  j["n_dof"] = mesh.config().size();
  return j.dump();
}

} // namespace latspec
