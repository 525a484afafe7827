#include <doctest.h>

#include <algorithm>
#include <random>

#include "latspec/rearrange.hpp"
#include "latspec/spectral.hpp"
#include "support.hpp"

using namespace latspec;

namespace {

Site s2(int x, int y) {
  Site s;
  s[0] = x;
  s[1] = y;
  return s;
}

std::vector<double> sorted_nonzero(const LatticeFunction &u) {
  std::vector<double> v;
  for (const auto &[p, x] : u.entries())
    if (x != 0) v.push_back(x);
  std::sort(v.begin(), v.end());
  return v;
}

// All pairs of sites in the padded bounding box of both supports.
double brute_riesz(const LatticeFunction &u, const LatticeFunction &v, const SupermodularTestFn &f) {
  const int d = u.dim();
  const int pad = f.cutoff();
  Site lo, hi;
  for (int k = 0; k < d; ++k) {
    lo[k] = 1 << 20;
    hi[k] = -(1 << 20);
  }
  for (const auto *w : {&u, &v})
    for (const auto &[p, x] : w->entries())
      for (int k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], p[k] - pad);
        hi[k] = std::max(hi[k], p[k] + pad);
      }
  std::vector<Site> box;
  Site cur = lo;
  while (true) {
    box.push_back(cur);
    int k = 0;
    while (k < d && cur[k] == hi[k]) {
      cur[k] = lo[k];
      ++k;
    }
    if (k == d) break;
    ++cur[k];
  }
  double total = 0;
  for (const auto &i : box)
    for (const auto &j : box) {
      int l1 = 0;
      for (int k = 0; k < d; ++k) l1 += std::abs(i[k] - j[k]);
      if (l1 > pad) continue;
      total += f.G(u(i), v(j)) * f.H[static_cast<std::size_t>(l1)];
    }
  return total;
}

SupermodularTestFn product_fn() { return {[](double x, double y) { return x * y; }, {3.0, 2.0, 1.0}}; }
SupermodularTestFn min_fn() { return {[](double x, double y) { return std::min(x, y); }, {1.0, 1.0, 0.5, 0.25}}; }

} // namespace

TEST_CASE("one-dimensional rearrangement examples") {
  const auto r = rearrange_1d({{5, 1.0}, {7, 3.0}, {8, 2.0}});
  CHECK(r == LineFunction{{0, 3.0}, {1, 2.0}, {-1, 1.0}});
  const auto ties = rearrange_1d({{-4, 2.0}, {3, 2.0}, {9, 0.0}});
  CHECK(ties == LineFunction{{0, 2.0}, {1, 2.0}});
  CHECK(rearrange_1d({}).empty());
  CHECK_THROWS_AS(rearrange_1d({{0, -1.0}}), RearrangeError);
}

TEST_CASE("set rearrangement examples") {
  CHECK(set_rearrange(Config(2, {s2(7, -3)})) == Config(2, {s2(0, 0)}));
  const auto dom = set_rearrange(Config(2, {s2(5, 5), s2(5, 6)}));
  CHECK(dom.size() == 2);
  CHECK(is_connected(dom));
  CHECK(is_symmetric(dom));
  const Config L(2, {s2(0, 0), s2(1, 0), s2(0, 1)});
  const auto RL = set_rearrange(L);
  CHECK(RL.size() == 3);
  CHECK(is_symmetric(RL));
  CHECK(RL == L);
  const Config bar(2, {s2(5, 5), s2(6, 5), s2(7, 5)});
  CHECK_FALSE(is_symmetric(bar));
  const auto Rbar = set_rearrange(bar);
  CHECK(is_symmetric(Rbar));
  CHECK(lambda_N(Rbar).lambda_N == doctest::Approx(lambda_N(bar).lambda_N).epsilon(1e-12));
  CHECK(set_rearrange_direction(bar, axis_direction(0, 2)) == Config(2, {s2(-1, 5), s2(0, 5), s2(1, 5)}));
}

TEST_CASE("directional rearrangement preserves values and is idempotent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 30)), 4);
    const auto u = testing::random_function(rng, X);
    const auto dirs = direction_set(d);
    const auto &e = dirs[rng() % dirs.size()];
    const auto Ru = rearrange_direction(u, e);
    CHECK(sorted_nonzero(Ru) == sorted_nonzero(u));
    CHECK(Ru.sum_squares() == doctest::Approx(u.sum_squares()).epsilon(1e-14));
    CHECK(rearrange_direction(Ru, e) == Ru);
    if (Ru.size() > 0) CHECK(is_e_convex(Ru.support(), e));
  }
}

TEST_CASE("full rearrangement reaches a symmetric fixed point") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 25)), 4);
    const auto u = testing::random_function(rng, X);
    const auto R = rearrange_full(u);
    CHECK(rearrange_full(R) == R);
    CHECK(is_symmetric(R.support()));
    CHECK(sorted_nonzero(R) == sorted_nonzero(u));
    const auto S = set_rearrange(X);
    CHECK(S.size() == X.size());
    CHECK(is_symmetric(S));
    CHECK(is_direction_convex(S));
  }
  RearrangeOptions tight;
  tight.max_cycles = 0;
  CHECK_THROWS_AS(rearrange_full(LatticeFunction::indicator(Config(2, {s2(0, 0), s2(3, 0)})), tight), RearrangeError);
}

TEST_CASE("rearrangement never increases Dirichlet energy") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 30)), 3);
    const auto u = testing::random_function(rng, X);
    const auto dirs = direction_set(d);
    const auto &e = dirs[rng() % dirs.size()];
    CHECK(testing::edge_sum(rearrange_direction(u, e)) <= testing::edge_sum(u) * (1 + 1e-12) + 1e-12);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = trial % 2 ? testing::random_connected(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 40)))
                             : testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 40)), 4);
    CHECK(testing::dense_lambda(set_rearrange(X)) <= testing::dense_lambda(X) * (1 + 1e-10));
  }
}

TEST_CASE("supermodular test functions") {
  CHECK(product_fn().h_nonincreasing());
  CHECK(product_fn().g_supermodular_on_samples());
  CHECK(min_fn().g_supermodular_on_samples());
  SupermodularTestFn bad{[](double x, double y) { return -x * y; }, {1.0, 2.0}};
  CHECK_FALSE(bad.h_nonincreasing());
  CHECK_FALSE(bad.g_supermodular_on_samples());
  SupermodularTestFn shifted{[](double x, double y) { return x * y + 1.0; }, {1.0}};
  CHECK_FALSE(shifted.g_supermodular_on_samples());
}

TEST_CASE("Riesz sums match brute force and grow under rearrangement") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 150; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 12)), 2);
    const auto Y = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 12)), 2);
    const auto u = testing::random_function(rng, X);
    const auto v = testing::random_function(rng, Y);
    const auto f = trial % 2 ? product_fn() : min_fn();
    const double base = riesz_sum(u, v, f);
    CHECK(base == doctest::Approx(brute_riesz(u, v, f)).epsilon(1e-12));
    const auto dirs = direction_set(d);
    const auto &e = dirs[rng() % dirs.size()];
    CHECK(riesz_sum(rearrange_direction(u, e), rearrange_direction(v, e), f) >= base * (1 - 1e-12) - 1e-12);
    CHECK(riesz_sum(rearrange_full(u), rearrange_full(v), f) >= base * (1 - 1e-12) - 1e-12);
  }
}
