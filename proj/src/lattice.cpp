#include "latspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

namespace latspec {

std::string to_string(const Site &s, int dim) {
  std::ostringstream os;
  os << '(';
  for (int k = 0; k < dim; ++k) {
    if (k) os << ',';
    os << s[k];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Config

Config::Config(int dim, std::vector<Site> sites) : dim_(dim), sites_(std::move(sites)) {
  check_dim(dim_);
  if (sites_.empty()) throw LatticeError("a configuration needs at least one site");
  for (const auto &s : sites_) {
    for (int k = dim_; k < kMaxDim; ++k)
      if (s[k] != 0) throw LatticeError("site has nonzero coordinate beyond the dimension");
    check_coord_range(s);
  }
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw LatticeError("duplicate site " + to_string(*std::adjacent_find(sites_.begin(), sites_.end()), dim_));
  index_.reserve(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) index_.emplace(sites_[i], static_cast<std::uint32_t>(i));
}

std::optional<std::size_t> Config::index_of(const Site &p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Config Config::translated(const Site &offset) const {
  std::vector<Site> out;
  out.reserve(sites_.size());
  for (const auto &s : sites_) out.push_back(s + offset);
  return Config(dim_, std::move(out));
}

Site Config::min_corner() const {
  Site m = sites_.front();
  for (const auto &s : sites_)
    for (int k = 0; k < dim_; ++k) m[k] = std::min(m[k], s[k]);
  return m;
}

Site Config::max_corner() const {
  Site m = sites_.front();
  for (const auto &s : sites_)
    for (int k = 0; k < dim_; ++k) m[k] = std::max(m[k], s[k]);
  return m;
}

Config Config::canonical() const { return translated(Site{} - min_corner()); }

// ---------------------------------------------------------------------------
// Neighbourhood combinatorics

std::vector<Site> neighbors(const Site &p, int dim) {
  check_dim(dim);
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(2 * dim));
  for (int k = 0; k < dim; ++k) {
    out.push_back(p + Site::unit(k));
    out.push_back(p - Site::unit(k));
  }
  return out;
}

int valence(const Config &X, const Site &p) {
  if (!X.contains(p)) throw LatticeError("valence: site " + to_string(p, X.dim()) + " is not in X");
  int v = 0;
  for (int k = 0; k < X.dim(); ++k) {
    v += !X.contains(p + Site::unit(k));
    v += !X.contains(p - Site::unit(k));
  }
  return v;
}

std::int64_t perimeter(const Config &X) {
  std::int64_t P = 0;
  for (const auto &p : X.sites()) P += valence(X, p);
  return P;
}

double scaled_perimeter(const Config &X) {
  const double N = static_cast<double>(X.size());
  return std::pow(N, -static_cast<double>(X.dim() - 1) / X.dim()) * static_cast<double>(perimeter(X));
}

std::int64_t internal_edge_count(const Config &X) {
  std::int64_t e = 0;
  for (const auto &p : X.sites())
    for (int k = 0; k < X.dim(); ++k) e += X.contains(p + Site::unit(k));
  return e;
}

std::vector<Config> connected_components(const Config &X) {
  std::vector<char> seen(X.size(), 0);
  std::vector<Config> comps;
  for (std::size_t start = 0; start < X.size(); ++start) {
    if (seen[start]) continue;
    std::vector<Site> comp;
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      comp.push_back(X[i]);
      for (const auto &q : neighbors(X[i], X.dim())) {
        if (auto j = X.index_of(q); j && !seen[*j]) {
          seen[*j] = 1;
          queue.push_back(*j);
        }
      }
    }
    comps.emplace_back(X.dim(), std::move(comp));
  }
  return comps;
}

bool is_connected(const Config &X) { return connected_components(X).size() == 1; }

// ---------------------------------------------------------------------------
// Directions

Direction axis_direction(int k, int dim) {
  check_dim(dim);
  if (k < 0 || k >= dim) throw LatticeError("axis index out of range");
  return Direction{Site::unit(k), dim, false};
}

Direction diagonal_direction(int i, int j, int sign, int dim) {
  check_dim(dim);
  if (i < 0 || j <= i || j >= dim || (sign != 1 && sign != -1))
    throw LatticeError("invalid diagonal direction");
  return Direction{Site::unit(i) + sign * Site::unit(j), dim, true};
}

std::vector<Direction> direction_set(int dim) {
  std::vector<Direction> D;
  for (int k = 0; k < dim; ++k) D.push_back(axis_direction(k, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      D.push_back(diagonal_direction(i, j, +1, dim));
      D.push_back(diagonal_direction(i, j, -1, dim));
    }
  return D;
}

LineCoord line_decompose(const Direction &e, const Site &i) {
  const std::int64_t proj = dot(i, e.vec, e.dim);
  // <e,e> is 1 on axes and 2 on diagonals; pick t with <i - t e, e> in the slab.
  const std::int64_t t = e.diagonal ? (proj >= 0 ? proj / 2 : -((-proj + 1) / 2)) : proj;
  LineCoord lc;
  lc.offset = t;
  lc.base = i - static_cast<std::int32_t>(t) * e.vec;
  return lc;
}

bool is_e_convex(const Config &X, const Direction &e) {
  // e-convex iff every line carries at most one maximal run, i.e. at most
  // one site x with x - e outside X.
  std::unordered_map<Site, int, SiteHash> runs;
  for (const auto &x : X.sites()) {
    if (X.contains(x - e.vec)) continue;
    if (++runs[line_decompose(e, x).base] > 1) return false;
  }
  return true;
}

bool is_direction_convex(const Config &X) {
  for (const auto &e : direction_set(X.dim()))
    if (!is_e_convex(X, e)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Merge translation

namespace {

// sigma with X n (Y + sigma) = {z}, X above and Y + sigma below z in the
// coordinate `top`; only coordinates [0, top] are touched.
Site contact_translation(const std::vector<Site> &X, const std::vector<Site> &Y, int top) {
  std::int32_t m = X.front()[top];
  for (const auto &x : X) m = std::min(m, x[top]);
  std::int32_t M = Y.front()[top];
  for (const auto &y : Y) M = std::max(M, y[top]);
  Site sigma;
  if (top > 0) {
    std::vector<Site> Xs, Ys;
    for (const auto &x : X)
      if (x[top] == m) Xs.push_back(x);
    for (const auto &y : Y)
      if (y[top] == M) Ys.push_back(y);
    std::sort(Xs.begin(), Xs.end());
    std::sort(Ys.begin(), Ys.end());
    sigma = contact_translation(Xs, Ys, top - 1);
  }
  sigma[top] = m - M;
  return sigma;
}

} // namespace

Site merge_translation(std::span<const Site> X, std::span<const Site> Y, int dim) {
  check_dim(dim);
  if (X.empty() || Y.empty()) throw LatticeError("merge_translation needs nonempty sets");
  std::vector<Site> xs(X.begin(), X.end()), ys(Y.begin(), Y.end());
  Site tau = contact_translation(xs, ys, dim - 1);
  tau[dim - 1] -= 1;
  return tau;
}

Site merge_translation(const Config &X, const Config &Y) {
  if (X.dim() != Y.dim()) throw LatticeError("dimension mismatch");
  return merge_translation(X.sites(), Y.sites(), X.dim());
}

std::int64_t count_cross_pairs(const Config &X, const Config &Y, const Site &tau) {
  std::int64_t count = 0;
  for (const auto &y : Y.sites())
    for (const auto &q : neighbors(y + tau, X.dim())) count += X.contains(q);
  return count;
}

// ---------------------------------------------------------------------------
// Balls and geometry

double unit_ball_volume(int dim) {
  check_dim(dim);
  return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double faber_radius(double N, int dim) {
  if (!(N > 0)) throw LatticeError("faber_radius needs N > 0");
  return std::pow(N / unit_ball_volume(dim), 1.0 / dim);
}

Config ball_config(double r, std::span<const double> center, int dim) {
  check_dim(dim);
  if (!(r > 0)) throw LatticeError("ball radius must be positive");
  if (static_cast<int>(center.size()) < dim) throw LatticeError("center has too few coordinates");
  std::array<std::int32_t, kMaxDim> lo{}, hi{};
  for (int k = 0; k < dim; ++k) {
    lo[k] = static_cast<std::int32_t>(std::floor(center[k] - r));
    hi[k] = static_cast<std::int32_t>(std::ceil(center[k] + r));
  }
  const double r2 = r * r;
  std::vector<Site> out;
  Site p;
  for (int k = 0; k < dim; ++k) p[k] = lo[k];
  while (true) {
    double d2 = 0;
    for (int k = 0; k < dim; ++k) {
      const double dx = p[k] - center[k];
      d2 += dx * dx;
    }
    if (d2 <= r2) out.push_back(p);
    int k = 0;
    while (k < dim && p[k] == hi[k]) {
      p[k] = lo[k];
      ++k;
    }
    if (k == dim) break;
    ++p[k];
  }
  return Config(dim, std::move(out));
}

Config ball_config(double r, int dim) {
  const std::array<double, kMaxDim> zero{};
  return ball_config(r, zero, dim);
}

double diameter(const Config &X) {
  // Farthest pairs are convex-hull vertices, and a hull vertex cannot have
  // all 2d neighbours inside X.
  std::vector<Site> boundary;
  for (const auto &p : X.sites())
    if (valence(X, p) > 0) boundary.push_back(p);
  std::int64_t best = 0;
  for (std::size_t a = 0; a < boundary.size(); ++a)
    for (std::size_t b = a + 1; b < boundary.size(); ++b)
      best = std::max(best, squared_norm(boundary[a] - boundary[b], X.dim()));
  return std::sqrt(static_cast<double>(best));
}

std::array<double, kMaxDim> centroid(const Config &X) {
  std::array<double, kMaxDim> c{};
  for (const auto &s : X.sites())
    for (int k = 0; k < X.dim(); ++k) c[k] += s[k];
  for (int k = 0; k < X.dim(); ++k) c[k] /= static_cast<double>(X.size());
  return c;
}

// ---------------------------------------------------------------------------
// Enumeration

void check_enumeration_budget(int N, int dim) {
  check_dim(dim);
  const bool ok = N >= 1 && ((dim == 1 && N <= 64) || (dim == 2 && N <= 12) || (dim == 3 && N <= 7));
  if (!ok)
    throw LatticeError("enumeration budget exceeded: N=" + std::to_string(N) + " in d=" + std::to_string(dim) +
                       " (limits: d=2 N<=12, d=3 N<=7)");
}

namespace {

class Redelmeier {
public:
  Redelmeier(int N, int dim, const std::function<bool(const Config &)> &visit)
      : N_(N), dim_(dim), visit_(visit), side_(2 * N + 1) {
    std::size_t cells = 1;
    for (int k = 0; k < dim; ++k) cells *= static_cast<std::size_t>(side_);
    marked_.assign(cells, 0);
  }

  void run() {
    Site origin;
    marked_[flat(origin)] = 1;
    std::vector<Site> untried{origin};
    recurse(untried);
  }

private:
  // Cells reachable from the root: the first nonzero coordinate, scanning from
  // the last axis down, is positive. The root is the smallest cell in this order.
  bool admissible(const Site &p) const {
    for (int k = dim_ - 1; k >= 0; --k) {
      if (p[k] > 0) return true;
      if (p[k] < 0) return false;
    }
    return true;
  }

  std::size_t flat(const Site &p) const {
    std::size_t idx = 0;
    for (int k = dim_ - 1; k >= 0; --k) idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(p[k] + N_);
    return idx;
  }

  bool recurse(std::vector<Site> untried) {
    while (!untried.empty()) {
      const Site c = untried.back();
      untried.pop_back();
      cells_.push_back(c);
      if (static_cast<int>(cells_.size()) == N_) {
        if (!visit_(Config(dim_, cells_).canonical())) return false;
      } else {
        std::vector<Site> fresh;
        for (const auto &nb : neighbors(c, dim_)) {
          if (!admissible(nb)) continue;
          auto &m = marked_[flat(nb)];
          if (m) continue;
          m = 1;
          fresh.push_back(nb);
        }
        std::vector<Site> next = untried;
        next.insert(next.end(), fresh.begin(), fresh.end());
        const bool go_on = recurse(std::move(next));
        for (const auto &nb : fresh) marked_[flat(nb)] = 0;
        if (!go_on) return false;
      }
      cells_.pop_back();
    }
    return true;
  }

  int N_, dim_;
  const std::function<bool(const Config &)> &visit_;
  int side_;
  std::vector<char> marked_;
  std::vector<Site> cells_;
};

} // namespace

void for_each_connected(int N, int dim, const std::function<bool(const Config &)> &visit) {
  check_enumeration_budget(N, dim);
  Redelmeier(N, dim, visit).run();
}

std::vector<Config> enumerate_connected(int N, int dim) {
  std::vector<Config> out;
  for_each_connected(N, dim, [&](const Config &c) {
    out.push_back(c);
    return true;
  });
  return out;
}

} // namespace latspec
