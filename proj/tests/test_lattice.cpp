#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "latspec/lattice.hpp"
#include "support.hpp"

using namespace latspec;

namespace {

Site s2(int x, int y) {
  Site s;
  s[0] = x;
  s[1] = y;
  return s;
}

Site s1(int x) {
  Site s;
  s[0] = x;
  return s;
}

Config square2() { return Config(2, {s2(0, 0), s2(1, 0), s2(0, 1), s2(1, 1)}); }

Config rectangle(int w, int h) {
  std::vector<Site> s;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) s.push_back(s2(x, y));
  return Config(2, s);
}

// Cross pairs by definition: every (x, y) with x in X, y in Y + tau adjacent.
std::int64_t brute_cross_pairs(const Config &X, const Config &Y, const Site &tau) {
  std::int64_t n = 0;
  for (const auto &x : X.sites())
    for (const auto &y : Y.sites())
      if (testing::adjacent(x, y + tau, X.dim())) ++n;
  return n;
}

} // namespace

TEST_CASE("config rejects empty and duplicate input, stores sites sorted") {
  CHECK_THROWS_AS(Config(2, {}), LatticeError);
  CHECK_THROWS_AS(Config(2, {s2(0, 0), s2(0, 0)}), LatticeError);
  CHECK_THROWS_AS(Config(5, {Site{}}), LatticeError);
  Config X(2, {s2(1, 0), s2(0, 0)});
  CHECK(X[0] == s2(0, 0));
  CHECK(X == Config(2, {s2(0, 0), s2(1, 0)}));
  CHECK(X.index_of(s2(1, 0)) == 1u);
  CHECK_FALSE(X.index_of(s2(2, 0)).has_value());
  CHECK(X.translated(s2(3, -2)).canonical() == X.canonical());
  CHECK(Config(2, {s2(-3, 4), s2(-2, 4)}).canonical() == X);
}

TEST_CASE("neighbors come in the order +e1, -e1, +e2, -e2, ...") {
  CHECK(neighbors(s1(0), 1) == std::vector<Site>{s1(1), s1(-1)});
  CHECK(neighbors(s2(0, 0), 2) == std::vector<Site>{s2(1, 0), s2(-1, 0), s2(0, 1), s2(0, -1)});
  Site p;
  p[0] = 1;
  p[1] = 2;
  p[2] = 3;
  const auto n3 = neighbors(p, 3);
  CHECK(n3.size() == 6);
  for (const auto &q : n3) CHECK(squared_norm(q - p, 3) == 1);
}

TEST_CASE("valence and perimeter") {
  const Config one(2, {s2(0, 0)});
  CHECK(valence(one, s2(0, 0)) == 4);
  CHECK_THROWS_AS(valence(one, s2(1, 0)), LatticeError);
  for (const auto &p : square2().sites()) CHECK(valence(square2(), p) == 2);
  const Config line3(1, {s1(0), s1(1), s1(2)});
  CHECK(valence(line3, s1(1)) == 0);

  CHECK(perimeter(one) == 4);
  CHECK(scaled_perimeter(one) == doctest::Approx(4.0));
  CHECK(perimeter(square2()) == 8);
  CHECK(scaled_perimeter(square2()) == doctest::Approx(4.0));
  for (int n = 1; n <= 20; ++n) {
    std::vector<Site> s;
    for (int i = 0; i < n; ++i) s.push_back(s1(i));
    CHECK(perimeter(Config(1, s)) == 2);
  }
}

TEST_CASE("perimeter counts exterior edges once and respects the square lower bound") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 40)), 4);
    std::int64_t exterior = 0;
    for (const auto &p : X.sites()) {
      const int v = valence(X, p);
      CHECK(v >= 0);
      CHECK(v <= 2 * d);
      for (const auto &s : testing::unit_steps(d))
        if (!X.contains(p + s)) ++exterior;
    }
    CHECK(perimeter(X) == exterior);
    CHECK(perimeter(X) + 2 * internal_edge_count(X) == static_cast<std::int64_t>(2 * d * X.size()));
    if (d == 2) CHECK(static_cast<double>(perimeter(X)) >= 4.0 * std::sqrt(static_cast<double>(X.size())) - 1e-12);
  }
  for (int q = 1; q <= 6; ++q) CHECK(perimeter(rectangle(q, q)) == 4 * q);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(Config(2, {s2(0, 0), s2(1, 0)})));
  CHECK_FALSE(is_connected(Config(2, {s2(0, 0), s2(1, 1)})));
  const auto comps = connected_components(Config(2, {s2(0, 0), s2(1, 0), s2(5, 5)}));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == Config(2, {s2(0, 0), s2(1, 0)}));
  CHECK(comps[1] == Config(2, {s2(5, 5)}));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto X = testing::random_connected(rng, testing::uniform_int(rng, 1, 3), 30);
    CHECK(is_connected(X));
    CHECK(connected_components(X).size() == 1);
  }
}

TEST_CASE("direction set has d^2 elements in the documented order") {
  for (int d = 1; d <= 4; ++d) CHECK(direction_set(d).size() == static_cast<std::size_t>(d * d));
  const auto D = direction_set(2);
  CHECK(D[0].vec == s2(1, 0));
  CHECK(D[1].vec == s2(0, 1));
  CHECK(D[2].vec == s2(1, 1));
  CHECK(D[3].vec == s2(1, -1));
  CHECK_FALSE(D[1].diagonal);
  CHECK(D[2].diagonal);
}

TEST_CASE("line decomposition") {
  const auto lc = line_decompose(axis_direction(0, 2), s2(3, 5));
  CHECK(lc.base == s2(0, 5));
  CHECK(lc.offset == 3);
  const auto ld = line_decompose(diagonal_direction(0, 1, -1, 2), s2(2, -1));
  CHECK(ld.base == s2(1, 0));
  CHECK(ld.offset == 1);

  std::mt19937_64 rng(3);
  for (int d = 1; d <= 3; ++d)
    for (const auto &e : direction_set(d))
      for (int t = 0; t < 1000; ++t) {
        const Site i = testing::random_site(rng, d, 50);
        const auto c = line_decompose(e, i);
        CHECK(c.base + static_cast<std::int32_t>(c.offset) * e.vec == i);
        const auto ip = dot(c.base, e.vec, d);
        if (e.diagonal)
          CHECK((ip == 0 || ip == 1));
        else
          CHECK(ip == 0);
      }
}

TEST_CASE("e-convexity") {
  for (int w = 1; w <= 4; ++w)
    for (int h = 1; h <= 4; ++h) CHECK(is_direction_convex(rectangle(w, h)));
  CHECK_FALSE(is_e_convex(Config(2, {s2(0, 0), s2(2, 0)}), axis_direction(0, 2)));
  CHECK(is_e_convex(Config(2, {s2(0, 0), s2(2, 0)}), axis_direction(1, 2)));
  // L-tromino: convex along the axes, not along e1 - e2.
  const Config L(2, {s2(0, 0), s2(1, 0), s2(0, 1)});
  CHECK(is_e_convex(L, axis_direction(0, 2)));
  CHECK(is_e_convex(L, diagonal_direction(0, 1, -1, 2)));
  const Config gap(2, {s2(0, 0), s2(2, 2)});
  CHECK_FALSE(is_e_convex(gap, diagonal_direction(0, 1, +1, 2)));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto X = testing::random_scattered(rng, 1, static_cast<std::size_t>(testing::uniform_int(rng, 1, 8)), 6);
    const bool interval = X[X.size() - 1][0] - X[0][0] + 1 == static_cast<int>(X.size());
    CHECK(is_e_convex(X, axis_direction(0, 1)) == interval);
  }
}

TEST_CASE("merge translation leaves exactly one contact pair") {
  const Site t1 = merge_translation(Config(1, {s1(0)}), Config(1, {s1(0)}));
  CHECK(std::abs(t1[0]) == 1);
  const Config X(2, {s2(0, 0)});
  const Config Y(2, {s2(0, 0), s2(1, 0)});
  CHECK(brute_cross_pairs(X, Y, merge_translation(X, Y)) == 1);

  std::mt19937_64 rng(21);
  for (int d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 100; ++trial) {
      const auto A = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 12)), 3);
      const auto B = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 12)), 3);
      const Site tau = merge_translation(A, B);
      CHECK(brute_cross_pairs(A, B, tau) == 1);
      CHECK(count_cross_pairs(A, B, tau) == 1);
      for (const auto &b : B.sites()) CHECK_FALSE(A.contains(b + tau));
    }
}

TEST_CASE("balls and Faber radius") {
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  CHECK(faber_radius(1, 2) == doctest::Approx(std::sqrt(1.0 / std::numbers::pi)));
  CHECK(faber_radius(1, 2) == doctest::Approx(0.5642).epsilon(1e-4));
  CHECK(faber_radius(1, 3) == doctest::Approx(0.6204).epsilon(1e-4));
  CHECK(ball_config(faber_radius(1, 2), 2) == Config(2, {s2(0, 0)}));
  CHECK(ball_config(1.0, 2) == Config(2, {s2(0, 0), s2(1, 0), s2(-1, 0), s2(0, 1), s2(0, -1)}));
  const std::array<double, kMaxDim> c{0.5, 0.5, 0, 0};
  CHECK(ball_config(0.75, c, 2) == square2());
  CHECK_THROWS_AS(ball_config(-1.0, 2), LatticeError);
  CHECK_THROWS_AS(faber_radius(0, 2), LatticeError);
}

TEST_CASE("diameter") {
  CHECK(diameter(Config(2, {s2(4, 4)})) == 0.0);
  CHECK(diameter(square2()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter(rectangle(7, 1)) == doctest::Approx(6.0));
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = testing::uniform_int(rng, 1, 3);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 30)), 5);
    std::int64_t best = 0;
    for (const auto &a : X.sites())
      for (const auto &b : X.sites()) best = std::max(best, squared_norm(a - b, d));
    CHECK(diameter(X) == doctest::Approx(std::sqrt(static_cast<double>(best))));
  }
}

TEST_CASE("enumeration of connected configurations") {
  const std::size_t fixed_polyominoes[] = {1, 2, 6, 19, 63, 216, 760, 2725, 9910};
  for (int N = 1; N <= 9; ++N) CHECK(enumerate_connected(N, 2).size() == fixed_polyominoes[N - 1]);
  for (int N = 1; N <= 6; ++N) CHECK(enumerate_connected(N, 2).size() == testing::naive_animal_count(N, 2));
  for (int N = 1; N <= 5; ++N) CHECK(enumerate_connected(N, 3).size() == testing::naive_animal_count(N, 3));
  for (int N = 1; N <= 10; ++N) CHECK(enumerate_connected(N, 1).size() == 1);

  std::set<std::vector<Site>> seen;
  for (const auto &X : enumerate_connected(6, 2)) {
    CHECK(is_connected(X));
    CHECK(X.size() == 6);
    CHECK(X == X.canonical());
    CHECK(seen.insert(std::vector<Site>(X.sites().begin(), X.sites().end())).second);
  }
  CHECK_THROWS_AS(enumerate_connected(13, 2), LatticeError);
  CHECK_THROWS_AS(enumerate_connected(8, 3), LatticeError);
  CHECK_THROWS_AS(enumerate_connected(2, 4), LatticeError);

  int visited = 0;
  for_each_connected(5, 2, [&](const Config &) { return ++visited < 10; });
  CHECK(visited == 10);
}

TEST_CASE("perimeter and diameter are comparable on direction-convex configurations") {
  double lo = 1e9, hi = 0;
  for (int N = 2; N <= 8; ++N)
    for (const auto &X : enumerate_connected(N, 2))
      if (is_direction_convex(X)) {
        const double r = static_cast<double>(perimeter(X)) / diameter(X);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
  MESSAGE("P / diam over direction-convex configurations, N <= 8: [" << lo << ", " << hi << "]");
  CHECK(lo >= 2.0);
  CHECK(hi <= 8.0);
}
