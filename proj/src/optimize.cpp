#include "latspec/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "latspec/fluct.hpp"
#include "latspec/rearrange.hpp"

namespace latspec {

StructureFlags verify_structure(const Config &X) {
  StructureFlags f;
  f.connected = is_connected(X);
  f.direction_convex = is_direction_convex(X);
  f.symmetric = is_symmetric(X);
  f.diameter = diameter(X);
  f.diameter_ratio = f.diameter / std::pow(static_cast<double>(X.size()), 1.0 / X.dim());
  return f;
}

MinimizationResult oracle_minimize(int N, int dim, const SolverOptions &opts) {
  check_enumeration_budget(N, dim);
  std::vector<std::pair<double, Config>> values;
  for_each_connected(N, dim, [&](const Config &X) {
    values.emplace_back(lambda_N(X, opts).lambda_N, X);
    return true;
  });
  double m = values.front().first;
  for (const auto &v : values) m = std::min(m, v.first);

  MinimizationResult res{values.front().second, m, {}, "oracle", 0.0, {}, {}, values.size()};
  for (const auto &[lam, X] : values)
    if (lam <= m + 1e-9 * std::abs(m)) res.minimizers.push_back(X);
  std::sort(res.minimizers.begin(), res.minimizers.end(),
            [](const Config &a, const Config &b) {
              return std::lexicographical_compare(a.sites().begin(), a.sites().end(), b.sites().begin(),
                                                  b.sites().end());
            });
  res.best = res.minimizers.front();
  res.flags = verify_structure(res.best);
  res.trace = {m};
  return res;
}

namespace {

std::vector<Site> exterior_sites(const Config &X) {
  std::vector<Site> out;
  for (const auto &p : X.sites())
    for (const auto &q : neighbors(p, X.dim()))
      if (!X.contains(q)) out.push_back(q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Sum of u over the neighbours of p: the first-order drop in energy from
// adding p scales with its square.
double insertion_score(const Site &p, const LatticeFunction &u, int dim) {
  double s = 0;
  for (const auto &q : neighbors(p, dim)) s += u(q);
  return s;
}

} // namespace

MinimizationResult local_search(const Config &seed, const LocalSearchOptions &opts) {
  const int d = seed.dim();
  const std::size_t N = seed.size();
  constexpr double kAccept = 1e-10;

  MinimizationResult res{seed, 0.0, {}, "local-search", 0.0, {}, {}, 0};
  auto current = lambda_N(seed, opts.solver);
  res.evaluations = 1;
  res.trace.push_back(current.lambda_N);
  Config X = seed;

  auto budget_left = [&] { return res.evaluations < opts.max_evaluations; };

  bool improved = true;
  while (improved && budget_left()) {
    improved = false;

    const Config R = set_rearrange(X);
    if (!(R == X) && budget_left()) {
      auto cand = lambda_N(R, opts.solver);
      ++res.evaluations;
      if (cand.lambda_N < current.lambda_N - kAccept) {
        X = R;
        current = std::move(cand);
        res.trace.push_back(current.lambda_N);
        improved = true;
        continue;
      }
    }

    const auto &u = current.eigenfunction;
    const bool exhaustive = N <= opts.exhaustive_below;

    std::vector<std::pair<double, Site>> removals;
    for (const auto &p : X.sites())
      if (valence(X, p) > 0) removals.emplace_back(u(p) * u(p), p);
    std::sort(removals.begin(), removals.end());
    if (!exhaustive && removals.size() > opts.removal_candidates) removals.resize(opts.removal_candidates);

    std::vector<std::pair<double, Site>> insertions;
    for (const auto &q : exterior_sites(X)) insertions.emplace_back(-insertion_score(q, u, d), q);
    std::sort(insertions.begin(), insertions.end());
    if (!exhaustive && insertions.size() > opts.insertion_candidates) insertions.resize(opts.insertion_candidates);

    for (const auto &[rs, rm] : removals) {
      for (const auto &[is, ins] : insertions) {
        if (!budget_left()) break;
        std::vector<Site> sites;
        sites.reserve(N);
        for (const auto &p : X.sites())
          if (!(p == rm)) sites.push_back(p);
        sites.push_back(ins);
        Config Y(d, std::move(sites));
        auto cand = lambda_N(Y, opts.solver);
        ++res.evaluations;
        if (cand.lambda_N < current.lambda_N - kAccept) {
          X = std::move(Y);
          current = std::move(cand);
          res.trace.push_back(current.lambda_N);
          improved = true;
          break;
        }
      }
      if (improved || !budget_left()) break;
    }
  }

  res.best = X;
  res.m_lambda_N = current.lambda_N;
  res.flags = verify_structure(X);
  return res;
}

BallCompetitor ball_competitor(std::size_t N, int dim, const SolverOptions &opts) {
  check_dim(dim);
  if (N == 0) throw LatticeError("ball competitor needs N >= 1");

  // Sites of a box around the Faber radius, grouped by squared norm.
  const double r = faber_radius(static_cast<double>(N), dim) + 2.0;
  const Config box = ball_config(r, dim);
  std::map<std::int64_t, std::vector<Site>> shells;
  for (const auto &p : box.sites()) shells[squared_norm(p, dim)].push_back(p);

  std::vector<Site> cap;
  std::int64_t radius_sq = 0;
  for (const auto &[r2, sites] : shells) {
    if (cap.size() + sites.size() > N) break;
    cap.insert(cap.end(), sites.begin(), sites.end());
    radius_sq = r2;
  }

  BallCompetitor out{Config(dim, cap), 0.0, radius_sq, N - cap.size(), lambda_unit_measure_ball(dim),
                     lambda_unit_radius_ball(dim), 0.0};
  std::size_t remaining = out.padding;
  while (remaining > 0) {
    const auto eig = lambda_N(out.config, opts);
    std::vector<std::pair<double, Site>> scored;
    for (const auto &q : exterior_sites(out.config))
      scored.emplace_back(-insertion_score(q, eig.eigenfunction, dim), q);
    std::sort(scored.begin(), scored.end());
    const std::size_t batch = std::min(remaining, std::max<std::size_t>(1, (out.padding + 7) / 8));
    std::vector<Site> sites(out.config.sites().begin(), out.config.sites().end());
    for (std::size_t k = 0; k < batch; ++k) sites.push_back(scored[k].second);
    out.config = Config(dim, std::move(sites));
    remaining -= batch;
  }
  out.lambda = lambda_N(out.config, opts).lambda_N;
  out.fitted_C = (out.lambda - out.lambda_ref) * std::pow(static_cast<double>(N), 1.0 / dim);
  return out;
}

Config random_connected_config(std::size_t N, int dim, std::mt19937_64 &rng) {
  check_dim(dim);
  if (N == 0) throw LatticeError("random configuration needs N >= 1");
  std::vector<Site> sites{Site{}};
  std::set<Site> in{Site{}};
  std::vector<Site> frontier;
  std::set<Site> in_frontier;
  auto push_neighbours = [&](const Site &p) {
    for (const auto &q : neighbors(p, dim))
      if (!in.contains(q) && in_frontier.insert(q).second) frontier.push_back(q);
  };
  push_neighbours(Site{});
  while (sites.size() < N) {
    const std::size_t k = static_cast<std::size_t>(rng() % frontier.size());
    const Site p = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    in_frontier.erase(p);
    in.insert(p);
    sites.push_back(p);
    push_neighbours(p);
  }
  return Config(dim, std::move(sites));
}

} // namespace latspec
