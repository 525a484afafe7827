#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/lattice_function.hpp"

namespace latspec {

class RearrangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Values on Z keyed by position.
using LineFunction = std::map<std::int64_t, double>;

/// Symmetric decreasing rearrangement on Z: the values sorted in decreasing
/// order (ties keep their original left-to-right order) are placed at
/// 0, 1, -1, 2, -2, ... Zero values are dropped. Negative values throw.
LineFunction rearrange_1d(const LineFunction &u);

/// Rearrangement of every lattice line {q + t e}, q in the reference slab.
/// For diagonal e, lines with <q,e> = 1 use the mirrored layout t -> -t.
LatticeFunction rearrange_direction(const LatticeFunction &u, const Direction &e);

struct RearrangeOptions {
  int max_cycles = 10000;
  /// When set, receives the support after every directional pass.
  std::vector<Config> *trace = nullptr;
};

/// Cycle the directional rearrangements over D until one whole cycle leaves
/// the function unchanged. Throws RearrangeError past max_cycles.
LatticeFunction rearrange_full(const LatticeFunction &u, const RearrangeOptions &opts = {});

Config set_rearrange_direction(const Config &X, const Direction &e);
Config set_rearrange(const Config &X, const RearrangeOptions &opts = {});
/// R_e(X) = X for every e in D.
bool is_symmetric(const Config &X);

/// Pair of test functions for the Riesz-type sums: G on value pairs and a
/// non-increasing profile H on l1 distances 0..H.size()-1, zero beyond.
struct SupermodularTestFn {
  std::function<double(double, double)> G;
  std::vector<double> H;

  int cutoff() const { return static_cast<int>(H.size()) - 1; }
  bool h_nonincreasing() const;
  /// Checks G(x, y+t) + G(x+s, y) <= G(x+s, y+t) + G(x, y) on a fixed grid of
  /// nonnegative samples, and G(0, 0) = 0.
  bool g_supermodular_on_samples(double slack = 1e-12) const;
};

/// sum_{i,j} G(u(i), v(j)) H(|i - j|_1), exact over all pairs with at least
/// one nonzero value and distance within the cutoff.
double riesz_sum(const LatticeFunction &u, const LatticeFunction &v, const SupermodularTestFn &f);

} // namespace latspec
