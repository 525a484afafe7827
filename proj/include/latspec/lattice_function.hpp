#pragma once

#include <span>
#include <utility>
#include <vector>

#include "latspec/lattice.hpp"

namespace latspec {

/// Finitely supported real function on Z^d, stored as (site, value) pairs
/// sorted by site. Sites not stored take the value 0.
class LatticeFunction {
public:
  using Entry = std::pair<Site, double>;

  explicit LatticeFunction(int dim) : dim_(dim) { check_dim(dim); }
  LatticeFunction(int dim, std::vector<Entry> entries);
  /// Values indexed like the sites of X.
  LatticeFunction(const Config &X, std::span<const double> values);

  static LatticeFunction indicator(const Config &X);

  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  double operator()(const Site &p) const;

  /// Sites carrying a nonzero value, as a configuration. Throws if empty.
  Config support() const;
  /// Entries with value exactly zero removed.
  LatticeFunction pruned() const;

  double sum_squares() const;
  /// Unordered-edge Dirichlet energy sum over nearest-neighbour pairs of Z^d,
  /// with the function extended by zero.
  double dirichlet_energy() const;

  friend bool operator==(const LatticeFunction &, const LatticeFunction &) = default;

private:
  int dim_;
  std::vector<Entry> entries_;
};

} // namespace latspec
