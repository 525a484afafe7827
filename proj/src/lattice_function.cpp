#include "latspec/lattice_function.hpp"

#include <algorithm>
#include <unordered_set>

namespace latspec {

LatticeFunction::LatticeFunction(int dim, std::vector<Entry> entries) : dim_(dim), entries_(std::move(entries)) {
  check_dim(dim);
  std::sort(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (int k = dim_; k < kMaxDim; ++k)
      if (entries_[i].first[k] != 0) throw LatticeError("site has nonzero coordinate beyond the dimension");
    if (i > 0 && entries_[i - 1].first == entries_[i].first)
      throw LatticeError("duplicate site " + to_string(entries_[i].first, dim_) + " in lattice function");
  }
}

LatticeFunction::LatticeFunction(const Config &X, std::span<const double> values) : dim_(X.dim()) {
  if (values.size() != X.size()) throw LatticeError("value count does not match configuration size");
  entries_.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) entries_.emplace_back(X[i], values[i]);
}

LatticeFunction LatticeFunction::indicator(const Config &X) {
  std::vector<double> ones(X.size(), 1.0);
  return LatticeFunction(X, ones);
}

double LatticeFunction::operator()(const Site &p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const Entry &e, const Site &s) { return e.first < s; });
  return (it != entries_.end() && it->first == p) ? it->second : 0.0;
}

Config LatticeFunction::support() const {
  std::vector<Site> s;
  for (const auto &[p, v] : entries_)
    if (v != 0.0) s.push_back(p);
  return Config(dim_, std::move(s));
}

LatticeFunction LatticeFunction::pruned() const {
  std::vector<Entry> e;
  for (const auto &entry : entries_)
    if (entry.second != 0.0) e.push_back(entry);
  return LatticeFunction(dim_, std::move(e));
}

double LatticeFunction::sum_squares() const {
  double s = 0;
  for (const auto &[p, v] : entries_) s += v * v;
  return s;
}

double LatticeFunction::dirichlet_energy() const {
  // Each edge with at least one stored endpoint is visited from its lower
  // endpoint when that endpoint is stored, otherwise from the upper one.
  std::unordered_set<Site, SiteHash> stored;
  stored.reserve(entries_.size());
  for (const auto &e : entries_) stored.insert(e.first);
  double energy = 0;
  for (const auto &[p, v] : entries_) {
    for (int k = 0; k < dim_; ++k) {
      const Site up = p + Site::unit(k);
      const double du = (*this)(up) - v;
      energy += du * du;
      const Site down = p - Site::unit(k);
      if (!stored.contains(down)) energy += v * v;
    }
  }
  return energy;
}

} // namespace latspec
