#include "latspec/rearrange.hpp"

#include <algorithm>
#include <unordered_map>

namespace latspec {

LineFunction rearrange_1d(const LineFunction &u) {
  std::vector<double> values;
  values.reserve(u.size());
  for (const auto &[t, v] : u) {
    if (v < 0) throw RearrangeError("rearrangement needs nonnegative values");
    if (v > 0) values.push_back(v);
  }
  // std::map iterates left to right, so a stable sort keeps ties in position order.
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  LineFunction out;
  for (std::size_t n = 0; n < values.size(); ++n) {
    // alpha_{n+1}: odd ranks go to 0, -1, -2, ...; even ranks to 1, 2, ...
    const auto rank = static_cast<std::int64_t>(n + 1);
    const std::int64_t pos = (rank % 2 == 1) ? -(rank - 1) / 2 : rank / 2;
    out.emplace(pos, values[n]);
  }
  return out;
}

LatticeFunction rearrange_direction(const LatticeFunction &u, const Direction &e) {
  if (e.dim != u.dim()) throw RearrangeError("direction and function dimensions differ");
  std::map<Site, LineFunction> lines;
  for (const auto &[p, v] : u.entries()) {
    if (v < 0) throw RearrangeError("rearrangement needs nonnegative values");
    if (v == 0) continue;
    const auto lc = line_decompose(e, p);
    lines[lc.base].emplace(lc.offset, v);
  }
  std::vector<LatticeFunction::Entry> out;
  out.reserve(u.size());
  for (const auto &[base, line] : lines) {
    // Lines based on the <q,e> = 1 layer are laid out mirrored, so both
    // layers are centred on the same half-integer of <x,e>.
    std::int64_t proj = 0;
    for (int k = 0; k < e.dim; ++k) proj += static_cast<std::int64_t>(base[k]) * e.vec[k];
    const std::int32_t sign = (e.diagonal && proj == 1) ? -1 : 1;
    for (const auto &[t, v] : rearrange_1d(line))
      out.emplace_back(base + sign * static_cast<std::int32_t>(t) * e.vec, v);
  }
  return LatticeFunction(u.dim(), std::move(out));
}

LatticeFunction rearrange_full(const LatticeFunction &u, const RearrangeOptions &opts) {
  const auto D = direction_set(u.dim());
  LatticeFunction current = u.pruned();
  for (int cycle = 0; cycle < opts.max_cycles; ++cycle) {
    const LatticeFunction start = current;
    for (const auto &e : D) {
      current = rearrange_direction(current, e);
      if (opts.trace && current.size() > 0) opts.trace->push_back(current.support());
    }
    if (current == start) return current;
  }
  throw RearrangeError("full rearrangement did not reach a fixpoint within " + std::to_string(opts.max_cycles) +
                       " cycles (support size " + std::to_string(current.size()) + ")");
}

Config set_rearrange_direction(const Config &X, const Direction &e) {
  return rearrange_direction(LatticeFunction::indicator(X), e).support();
}

Config set_rearrange(const Config &X, const RearrangeOptions &opts) {
  return rearrange_full(LatticeFunction::indicator(X), opts).support();
}

bool is_symmetric(const Config &X) {
  for (const auto &e : direction_set(X.dim()))
    if (!(set_rearrange_direction(X, e) == X)) return false;
  return true;
}

bool SupermodularTestFn::h_nonincreasing() const {
  for (std::size_t t = 0; t < H.size(); ++t) {
    if (H[t] < 0) return false;
    if (t > 0 && H[t] > H[t - 1]) return false;
  }
  return true;
}

bool SupermodularTestFn::g_supermodular_on_samples(double slack) const {
  if (G(0.0, 0.0) != 0.0) return false;
  const double xs[] = {0.0, 0.25, 0.5, 1.0, 2.0, 3.5};
  const double steps[] = {0.1, 0.5, 1.0, 2.5};
  for (double x : xs)
    for (double y : xs)
      for (double s : steps)
        for (double t : steps)
          if (G(x, y + t) + G(x + s, y) > G(x + s, y + t) + G(x, y) + slack) return false;
  return true;
}

namespace {

// Offsets with l1 norm at most r.
std::vector<Site> l1_ball(int r, int dim) {
  std::vector<Site> out;
  Site p;
  for (int k = 0; k < dim; ++k) p[k] = -r;
  while (true) {
    std::int64_t n = 0;
    for (int k = 0; k < dim; ++k) n += std::abs(p[k]);
    if (n <= r) out.push_back(p);
    int k = 0;
    while (k < dim && p[k] == r) {
      p[k] = -r;
      ++k;
    }
    if (k == dim) break;
    ++p[k];
  }
  return out;
}

std::int64_t l1_norm(const Site &p, int dim) {
  std::int64_t n = 0;
  for (int k = 0; k < dim; ++k) n += std::abs(p[k]);
  return n;
}

} // namespace

double riesz_sum(const LatticeFunction &u, const LatticeFunction &v, const SupermodularTestFn &f) {
  if (u.dim() != v.dim()) throw RearrangeError("riesz_sum: dimension mismatch");
  if (f.H.empty()) throw RearrangeError("riesz_sum: H needs a finite nonempty profile");
  const int dim = u.dim();
  const auto offsets = l1_ball(f.cutoff(), dim);
  double total = 0;
  // Pairs with u(i) != 0.
  for (const auto &[i, ui] : u.entries()) {
    if (ui == 0) continue;
    for (const auto &off : offsets) {
      const Site j = i + off;
      total += f.G(ui, v(j)) * f.H[static_cast<std::size_t>(l1_norm(off, dim))];
    }
  }
  // Pairs with u(i) == 0 and v(j) != 0.
  for (const auto &[j, vj] : v.entries()) {
    if (vj == 0) continue;
    for (const auto &off : offsets) {
      const Site i = j + off;
      if (u(i) != 0) continue;
      total += f.G(0.0, vj) * f.H[static_cast<std::size_t>(l1_norm(off, dim))];
    }
  }
  return total;
}

} // namespace latspec
