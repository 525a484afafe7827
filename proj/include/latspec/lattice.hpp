#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "latspec/site.hpp"

namespace latspec {

/// A finite, nonempty set of lattice points of one dimension.
///
/// Sites are stored sorted lexicographically, which makes equality, hashing
/// and serialization independent of construction order. Immutable.
class Config {
public:
  Config(int dim, std::vector<Site> sites);

  int dim() const { return dim_; }
  std::size_t size() const { return sites_.size(); }
  std::span<const Site> sites() const { return sites_; }
  const Site &operator[](std::size_t i) const { return sites_[i]; }

  bool contains(const Site &p) const { return index_.contains(p); }
  std::optional<std::size_t> index_of(const Site &p) const;

  Config translated(const Site &offset) const;
  /// Translate so the componentwise minimum corner sits at the origin.
  Config canonical() const;
  Site min_corner() const;
  Site max_corner() const;

  friend bool operator==(const Config &a, const Config &b) {
    return a.dim_ == b.dim_ && a.sites_ == b.sites_;
  }

private:
  int dim_;
  std::vector<Site> sites_;
  std::unordered_map<Site, std::uint32_t, SiteHash> index_;
};

/// The 2d nearest neighbours of p, ordered +e_1, -e_1, +e_2, -e_2, ...
std::vector<Site> neighbors(const Site &p, int dim);

/// Number of neighbours of p that lie outside X. Throws if p is not in X.
int valence(const Config &X, const Site &p);

/// Edge perimeter: total valence over X.
std::int64_t perimeter(const Config &X);
/// N^{-(d-1)/d} P(X).
double scaled_perimeter(const Config &X);

/// Unordered nearest-neighbour pairs with both endpoints in X.
std::int64_t internal_edge_count(const Config &X);

bool is_connected(const Config &X);
/// Components in order of their smallest site.
std::vector<Config> connected_components(const Config &X);

// ---------------------------------------------------------------------------
// Direction set D = {e_i} u {e_i + e_j, e_i - e_j : i < j}

struct Direction {
  Site vec;
  int dim = 0;
  bool diagonal = false;

  friend bool operator==(const Direction &a, const Direction &b) {
    return a.dim == b.dim && a.vec == b.vec;
  }
};

Direction axis_direction(int k, int dim);
Direction diagonal_direction(int i, int j, int sign, int dim);

/// All d^2 directions: e_1..e_d first, then e_i+e_j, e_i-e_j for i<j in
/// lexicographic (i, j) order.
std::vector<Direction> direction_set(int dim);

/// i = base + offset * e with base in the reference plane (axis case:
/// <base,e> = 0) or slab (diagonal case: <base,e> in {0,1}).
struct LineCoord {
  Site base;
  std::int64_t offset = 0;
  friend bool operator==(const LineCoord &, const LineCoord &) = default;
};

LineCoord line_decompose(const Direction &e, const Site &i);

bool is_e_convex(const Config &X, const Direction &e);
bool is_direction_convex(const Config &X);

// ---------------------------------------------------------------------------

/// Translation tau such that exactly one neighbouring pair (x, y) has x in X
/// and y in Y + tau. Built by the extremal-slab recursion on the last
/// coordinate; ties resolve to the lexicographically smallest candidate.
Site merge_translation(std::span<const Site> X, std::span<const Site> Y, int dim);
Site merge_translation(const Config &X, const Config &Y);

/// #{(x, y) : x in X, y in Y + tau, |x - y| = 1}.
std::int64_t count_cross_pairs(const Config &X, const Config &Y, const Site &tau);

/// Lebesgue measure of the unit ball in R^d.
double unit_ball_volume(int dim);
/// Radius r_N with |B_{r_N}| = N.
double faber_radius(double N, int dim);
/// {i in Z^d : |i - center| <= r}.
Config ball_config(double r, std::span<const double> center, int dim);
Config ball_config(double r, int dim);

/// Maximum Euclidean distance between two sites.
double diameter(const Config &X);

/// Centroid of the sites (real coordinates, first dim entries meaningful).
std::array<double, kMaxDim> centroid(const Config &X);

// ---------------------------------------------------------------------------
// Enumeration of connected configurations up to translation.

/// Throws LatticeError unless (d = 1, N <= 64), (d = 2, N <= 12) or
/// (d = 3, N <= 7).
void check_enumeration_budget(int N, int dim);

/// Calls visit once for every connected N-site configuration, in canonical
/// form (min corner at the origin). Redelmeier's method, so no deduplication
/// table is needed. Return false from visit to stop early.
void for_each_connected(int N, int dim, const std::function<bool(const Config &)> &visit);
std::vector<Config> enumerate_connected(int N, int dim);

} // namespace latspec
