#include "latspec/fluct.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "latspec/config_io.hpp"
#include "latspec/optimize.hpp"

namespace latspec {

namespace {

double bisect_first_zero(int dim) {
  auto f = [dim](double x) { return dim == 1 ? std::cos(x) : std::cyl_bessel_j(dim / 2.0 - 1.0, x); };
  double lo = 0.1;
  const double step = 0.05;
  while (f(lo) * f(lo + step) > 0) lo += step;
  double hi = lo + step;
  const double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) * flo > 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

double bessel_first_zero(int dim) {
  check_dim(dim);
  static const std::array<double, kMaxDim + 1> zeros = [] {
    std::array<double, kMaxDim + 1> z{};
    for (int d = 1; d <= kMaxDim; ++d) z[static_cast<std::size_t>(d)] = bisect_first_zero(d);
    return z;
  }();
  return zeros[static_cast<std::size_t>(dim)];
}

double lambda_unit_radius_ball(int dim) {
  const double j = bessel_first_zero(dim);
  return j * j;
}

double lambda_unit_measure_ball(int dim) {
  return std::pow(unit_ball_volume(dim), 2.0 / dim) * lambda_unit_radius_ball(dim);
}

// ---------------------------------------------------------------------------

namespace {

// Maximal runs of consecutive sites along the last axis.
struct Run {
  Site rest;
  std::int64_t lo, hi;
};

std::vector<Run> runs_along_last_axis(const Config &X) {
  const int a = X.dim() - 1;
  std::vector<Run> out;
  for (const auto &p : X.sites()) {
    Site rest = p;
    rest[a] = 0;
    if (!out.empty() && out.back().rest == rest && out.back().hi + 1 == p[a])
      out.back().hi = p[a];
    else
      out.push_back({rest, p[a], p[a]});
  }
  return out;
}

} // namespace

AsymmetryResult discrete_asymmetry(const Config &X) {
  const int d = X.dim();
  const int a = d - 1;
  const Config cap = ball_config(faber_radius(static_cast<double>(X.size()), d), d);
  const auto xruns = runs_along_last_axis(X);
  const auto cruns = runs_along_last_axis(cap);

  // overlap(z) = sum over run pairs of |[p, q] cap [lo + t, hi + t]|, t = z_a.
  // Each term is a trapezoid in t: sum of coef * max(0, t - s) over four
  // kinks s, grouped by the remaining coordinates of z.
  std::unordered_map<Site, std::vector<std::pair<std::int64_t, int>>, SiteHash> groups;
  for (const auto &xr : xruns) {
    for (const auto &cr : cruns) {
      auto &ev = groups[xr.rest - cr.rest];
      ev.emplace_back(xr.lo - cr.hi - 1, +1);
      ev.emplace_back(xr.lo - cr.lo, -1);
      ev.emplace_back(xr.hi - cr.hi, -1);
      ev.emplace_back(xr.hi - cr.lo + 1, +1);
    }
  }
  std::vector<Site> keys;
  keys.reserve(groups.size());
  for (const auto &[k, v] : groups) keys.push_back(k);
  std::sort(keys.begin(), keys.end());

  std::int64_t best = -1;
  Site best_shift;
  for (const auto &key : keys) {
    auto &ev = groups[key];
    std::sort(ev.begin(), ev.end());
    std::int64_t slope = 0, value = 0;
    std::size_t k = 0;
    for (std::int64_t t = ev.front().first + 1; k < ev.size(); ++t) {
      while (k < ev.size() && ev[k].first + 1 <= t) slope += ev[k++].second;
      value += slope;
      if (value > best) {
        best = value;
        best_shift = key;
        best_shift[a] = static_cast<std::int32_t>(t);
      }
    }
  }

  AsymmetryResult res;
  res.best_shift = best_shift;
  res.cap_size = cap.size();
  res.discrete_asym = static_cast<std::int64_t>(X.size() + cap.size()) - 2 * best;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

// Fraction of a simplex (d <= 3) on which the affine function with vertex
// values f is negative.
double negative_fraction(const double *f, int d) {
  std::array<double, kMaxDim + 1> neg{}, pos{};
  int k = 0, m = 0;
  for (int i = 0; i <= d; ++i) (f[i] < 0 ? neg[static_cast<std::size_t>(k++)] : pos[static_cast<std::size_t>(m++)]) = f[i];
  if (k == 0) return 0.0;
  if (m == 0) return 1.0;
  if (k == 1) {
    double frac = 1;
    for (int j = 0; j < m; ++j) frac *= -neg[0] / (pos[static_cast<std::size_t>(j)] - neg[0]);
    return frac;
  }
  if (m == 1) {
    double frac = 1;
    for (int i = 0; i < k; ++i) frac *= pos[0] / (pos[0] - neg[static_cast<std::size_t>(i)]);
    return 1.0 - frac;
  }
  // d = 3 with two vertices on each side.
  const double a = -neg[0], b = -neg[1], g = pos[0], h = pos[1];
  return (a * a * b * b + a * b * (a + b) * (g + h) + g * h * (a * a + a * b + b * b)) /
         ((a + g) * (a + h) * (b + g) * (b + h));
}

} // namespace

SymmetricDifference continuum_symmetric_difference(const KuhnMesh &mesh, double r, const RealPoint &z,
                                                   const QuadratureOptions &opts) {
  if (!(r >= 0)) throw std::invalid_argument("ball radius must be nonnegative");
  const int d = mesh.dim();
  const std::size_t nv = static_cast<std::size_t>(d + 1);
  const std::size_t stride = nv * static_cast<std::size_t>(d);
  const double zeta_measure = mesh.measure();
  const double ball_measure = unit_ball_volume(d) * std::pow(r, d);
  const double tol = opts.tol > 0 ? opts.tol : 1e-6 * zeta_measure;
  const double r2 = r * r;

  double inside = 0;
  double vol = 1.0 / factorial(d);
  std::vector<double> straddling;

  // Appends the simplex at v to straddling, or books it as inside/outside.
  auto classify = [&](const double *v) {
    bool all_in = true;
    RealPoint c{};
    for (std::size_t i = 0; i < nv; ++i) {
      double s = 0;
      for (int k = 0; k < d; ++k) {
        const double dk = v[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)];
        s += dk * dk;
        c[static_cast<std::size_t>(k)] += v[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
      }
      if (s > r2) all_in = false;
    }
    if (all_in) {
      inside += vol;
      return;
    }
    double cz = 0, rho = 0;
    for (int k = 0; k < d; ++k) {
      c[static_cast<std::size_t>(k)] /= static_cast<double>(nv);
      const double dk = c[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)];
      cz += dk * dk;
    }
    for (std::size_t i = 0; i < nv; ++i) {
      double s = 0;
      for (int k = 0; k < d; ++k) {
        const double dk = v[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
        s += dk * dk;
      }
      rho = std::max(rho, s);
    }
    if (std::sqrt(cz) >= r + std::sqrt(rho)) return;
    straddling.insert(straddling.end(), v, v + stride);
  };

  std::vector<double> buf(stride);
  for (const auto &s : mesh.simplices()) {
    const auto verts = s.vertices();
    for (std::size_t i = 0; i < nv; ++i)
      for (int k = 0; k < d; ++k) buf[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] = verts[i][k];
    classify(buf.data());
  }

  // Bounds on the ball's share of the straddling leaves. |x - z| - r is
  // convex: its vertex interpolant lies above it and its tangent plane at the
  // centroid below, so the two planar cuts bracket the true share.
  double share_lo = 0, share_hi = 0;
  auto bracket = [&] {
    share_lo = share_hi = 0;
    std::array<double, kMaxDim + 1> lin{}, tan{};
    for (std::size_t p = 0; p < straddling.size(); p += stride) {
      const double *v = straddling.data() + p;
      if (d > 3) {
        share_hi += vol;
        continue;
      }
      RealPoint c{};
      for (std::size_t i = 0; i < nv; ++i)
        for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] += v[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] / static_cast<double>(nv);
      double cz = 0;
      for (int k = 0; k < d; ++k) cz += (c[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)]) * (c[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)]);
      cz = std::sqrt(cz);
      for (std::size_t i = 0; i < nv; ++i) {
        double s = 0, proj = 0;
        for (int k = 0; k < d; ++k) {
          const double xk = v[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
          s += (xk - z[static_cast<std::size_t>(k)]) * (xk - z[static_cast<std::size_t>(k)]);
          proj += (c[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)]) * (xk - c[static_cast<std::size_t>(k)]);
        }
        lin[i] = std::sqrt(s) - r;
        tan[i] = cz > 0 ? cz - r + proj / cz : -1.0;
      }
      share_lo += vol * negative_fraction(lin.data(), d);
      share_hi += vol * negative_fraction(tan.data(), d);
    }
  };

  int depth = 0;
  auto count = [&] { return straddling.size() / stride; };
  bracket();
  while (share_hi - share_lo > tol && depth < opts.max_depth && 2 * count() <= opts.max_leaves) {
    std::vector<double> parents;
    parents.swap(straddling);
    vol *= 0.5;
    ++depth;
    for (std::size_t p = 0; p < parents.size(); p += stride) {
      const double *v = parents.data() + p;
      // Longest edge, first pair on ties.
      std::size_t ea = 0, eb = 1;
      double best = -1;
      for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = i + 1; j < nv; ++j) {
          double s = 0;
          for (int k = 0; k < d; ++k) {
            const double dk = v[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] -
                              v[j * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
            s += dk * dk;
          }
          if (s > best) {
            best = s;
            ea = i;
            eb = j;
          }
        }
      for (std::size_t replace : {ea, eb}) {
        std::copy(v, v + stride, buf.begin());
        for (int k = 0; k < d; ++k)
          buf[replace * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] =
              0.5 * (v[ea * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] +
                     v[eb * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)]);
        classify(buf.data());
      }
    }
    bracket();
  }

  SymmetricDifference out;
  out.value = zeta_measure + ball_measure - (2.0 * inside + share_lo + share_hi);
  out.error = share_hi - share_lo;
  out.depth = depth;
  out.reached_tol = out.error <= tol;
  return out;
}

void add_continuum_asymmetry(AsymmetryResult &res, const KuhnMesh &mesh, const QuadratureOptions &opts) {
  const int d = mesh.dim();
  RealPoint z{};
  for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = res.best_shift[k];
  const auto sd = continuum_symmetric_difference(
      mesh, faber_radius(static_cast<double>(mesh.config().size()), d), z, opts);
  res.continuum_asym = sd.value;
  res.quadrature_error = sd.error;
}

FkDeficit fk_deficit(const KuhnMesh &mesh, double fem_mu) {
  const int d = mesh.dim();
  FkDeficit out;
  out.lambda_ball = lambda_unit_measure_ball(d) / std::pow(mesh.measure(), 2.0 / d);
  out.deficit = (fem_mu - out.lambda_ball) / out.lambda_ball;
  if (out.deficit < 0) {
    out.deficit = 0;
    out.clamped = true;
  }
  out.sqrt_deficit = std::sqrt(out.deficit);
  return out;
}

double fluctuation_bound_rhs(double N, double P_N, double alpha_N, int dim) {
  check_dim(dim);
  if (!(N > 0) || P_N < 0 || alpha_N < 0) throw std::invalid_argument("fluctuation bound needs N > 0, P_N >= 0, alpha_N >= 0");
  return N * (std::pow(N, -1.0 / (2 * dim)) * std::sqrt(P_N) + std::sqrt(alpha_N) + std::pow(N, -1.0 / dim));
}

// ---------------------------------------------------------------------------

std::string to_string(ConfigSource s) {
  switch (s) {
  case ConfigSource::Ball: return "ball";
  case ConfigSource::Local: return "local";
  case ConfigSource::Oracle: return "oracle";
  }
  return "ball";
}

ConfigSource parse_config_source(const std::string &s) {
  if (s == "ball") return ConfigSource::Ball;
  if (s == "local") return ConfigSource::Local;
  if (s == "oracle") return ConfigSource::Oracle;
  throw std::invalid_argument("unknown config source '" + s + "' (expected ball, local or oracle)");
}

ExperimentRecord run_single(std::size_t N, const SweepSpec &spec) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.N = N;
  rec.d = spec.dim;
  try {
    const int d = spec.dim;
    std::optional<Config> X;
    double best_known = 0;
    switch (spec.source) {
    case ConfigSource::Ball: {
      auto bc = ball_competitor(N, d, spec.solver);
      X = std::move(bc.config);
      best_known = bc.lambda;
      break;
    }
    case ConfigSource::Local: {
      auto bc = ball_competitor(N, d, spec.solver);
      LocalSearchOptions lo;
      lo.max_evaluations = static_cast<std::size_t>(spec.local_budget);
      lo.solver = spec.solver;
      auto ls = local_search(bc.config, lo);
      X = std::move(ls.best);
      best_known = std::min(bc.lambda, ls.m_lambda_N);
      break;
    }
    case ConfigSource::Oracle: {
      auto om = oracle_minimize(static_cast<int>(N), d, spec.solver);
      X = std::move(om.best);
      best_known = om.m_lambda_N;
      break;
    }
    }
    const auto eig = lambda_N(*X, spec.solver);
    const double Nd = static_cast<double>(N);
    rec.lambda_N = eig.lambda_N;
    rec.alpha_N = std::max(0.0, eig.lambda_N - best_known);
    rec.perimeter = perimeter(*X);
    rec.P_N = scaled_perimeter(*X);
    auto asym = discrete_asymmetry(*X);
    rec.discrete_asym = asym.discrete_asym;
    rec.bound_rhs = fluctuation_bound_rhs(Nd, rec.P_N, rec.alpha_N, d);
    rec.fitted_C = static_cast<double>(rec.discrete_asym) / rec.bound_rhs;

    if (spec.chain_constants) {
      const auto mesh = zeta(*X);
      const double P = static_cast<double>(rec.perimeter);
      rec.zeta_measure = mesh.measure();
      rec.C_measure = (mesh.measure() - Nd) / P;
      const auto fem = fem_first_eigenvalue(mesh, spec.solver);
      rec.fem_mu = fem.mu;
      rec.C_fem = (fem.mu - std::pow(Nd, -2.0 / d) * eig.lambda_N) / std::pow(Nd, -3.0 / d);
      add_continuum_asymmetry(asym, mesh, spec.quadrature);
      rec.continuum_asym = asym.continuum_asym;
      rec.quadrature_error = asym.quadrature_error;
      rec.C_asym = (static_cast<double>(rec.discrete_asym) - *asym.continuum_asym) / P;
    }
  } catch (const std::exception &e) {
    ExperimentRecord failed;
    failed.N = N;
    failed.d = spec.dim;
    failed.failure = e.what();
    rec = std::move(failed);
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<ExperimentRecord> run_experiment(const SweepSpec &spec) {
  check_dim(spec.dim);
  std::vector<std::size_t> Ns = spec.N_values;
  std::sort(Ns.begin(), Ns.end());
  Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
  std::vector<ExperimentRecord> out(Ns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < Ns.size(); k = next++) out[k] = run_single(Ns[k], spec);
  };
  const int nthreads = std::max(1, std::min<int>(spec.threads, static_cast<int>(Ns.size())));
  std::vector<std::jthread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  return out;
}

ExponentFit fit_exponent(const std::vector<ExperimentRecord> &records) {
  std::vector<double> x, y;
  for (const auto &r : records)
    if (r.failure.empty() && r.discrete_asym > 0) {
      x.push_back(std::log(static_cast<double>(r.N)));
      y.push_back(std::log(static_cast<double>(r.discrete_asym)));
    }
  if (x.size() < 2) throw std::invalid_argument("exponent fit needs at least two records with positive asymmetry");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw std::invalid_argument("exponent fit needs at least two distinct N");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = x.size();
  return fit;
}

TrendTest kendall_trend(const std::vector<double> &x, const std::vector<double> &y, double alpha) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall_trend: size mismatch");
  const std::size_t n = x.size();
  TrendTest t;
  if (n < 3) return t;
  auto sign = [](double v) { return (v > 0) - (v < 0); };
  std::int64_t S = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) S += sign(x[j] - x[i]) * sign(y[j] - y[i]);
  const double nd = static_cast<double>(n);
  const double sigma = std::sqrt(nd * (nd - 1) * (2 * nd + 5) / 18.0);
  t.tau = static_cast<double>(S) / (nd * (nd - 1) / 2);
  t.z = S > 0 ? (static_cast<double>(S) - 1) / sigma : S < 0 ? (static_cast<double>(S) + 1) / sigma : 0.0;
  t.p_value = 0.5 * std::erfc(t.z / std::numbers::sqrt2);
  t.increasing = t.p_value < alpha;
  return t;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char *kColumns[] = {"N",          "d",           "lambda_N",       "alpha_N",          "P_N",
                                    "perimeter",  "discrete_asym", "bound_rhs",    "fitted_C",         "zeta_measure",
                                    "fem_mu",     "continuum_asym", "quadrature_error", "C_measure",    "C_fem",
                                    "C_asym",     "failure"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string opt_real(const std::optional<double> &v) { return v ? format_real(*v) : std::string(); }

std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string &line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

} // namespace

std::string records_csv_header() {
  std::string h;
  for (std::size_t k = 0; k < kColumnCount; ++k) {
    if (k) h += ',';
    h += kColumns[k];
  }
  return h;
}

std::string record_to_csv(const ExperimentRecord &r) {
  std::ostringstream os;
  os << r.N << ',' << r.d << ',';
  if (!r.failure.empty()) {
    for (std::size_t k = 2; k + 1 < kColumnCount; ++k) os << ',';
    os << csv_quote(r.failure);
    return os.str();
  }
  os << format_real(r.lambda_N) << ',' << format_real(r.alpha_N) << ',' << format_real(r.P_N) << ','
     << r.perimeter << ',' << r.discrete_asym << ',' << format_real(r.bound_rhs) << ','
     << format_real(r.fitted_C) << ',' << opt_real(r.zeta_measure) << ',' << opt_real(r.fem_mu) << ','
     << opt_real(r.continuum_asym) << ',' << opt_real(r.quadrature_error) << ',' << opt_real(r.C_measure)
     << ',' << opt_real(r.C_fem) << ',' << opt_real(r.C_asym) << ',';
  return os.str();
}

ExperimentRecord record_from_csv(const std::string &line) {
  const auto f = csv_split(line);
  if (f.size() != kColumnCount)
    throw ParseError("expected " + std::to_string(kColumnCount) + " fields, got " + std::to_string(f.size()), 0, 0);
  std::size_t col = 1;
  auto column = [&](std::size_t k) {
    col = 1;
    for (std::size_t i = 0; i < k; ++i) col += f[i].size() + 1;
    return col;
  };
  auto to_real = [&](std::size_t k) {
    try {
      std::size_t used = 0;
      const double v = std::stod(f[k], &used);
      if (used != f[k].size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception &) {
      throw ParseError(std::string("bad number in column ") + kColumns[k], 0, column(k));
    }
  };
  auto to_int = [&](std::size_t k) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(f[k], &used);
      if (used != f[k].size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception &) {
      throw ParseError(std::string("bad integer in column ") + kColumns[k], 0, column(k));
    }
  };
  auto opt = [&](std::size_t k) -> std::optional<double> {
    if (f[k].empty()) return std::nullopt;
    return to_real(k);
  };
  ExperimentRecord r;
  r.N = static_cast<std::size_t>(to_int(0));
  r.d = static_cast<int>(to_int(1));
  r.failure = f[16];
  if (!r.failure.empty()) return r;
  r.lambda_N = to_real(2);
  r.alpha_N = to_real(3);
  r.P_N = to_real(4);
  r.perimeter = to_int(5);
  r.discrete_asym = to_int(6);
  r.bound_rhs = to_real(7);
  r.fitted_C = to_real(8);
  r.zeta_measure = opt(9);
  r.fem_mu = opt(10);
  r.continuum_asym = opt(11);
  r.quadrature_error = opt(12);
  r.C_measure = opt(13);
  r.C_fem = opt(14);
  r.C_asym = opt(15);
  return r;
}

std::string gnuplot_script(const std::string &csv_name, int dim) {
  const double slope = 1.0 - 1.0 / (2.0 * dim);
  std::ostringstream os;
  os << "# log-log discrete asymmetry against N\n";
  os << "set datafile separator ','\n";
  os << "set logscale xy\n";
  os << "set xlabel 'N'\n";
  os << "set ylabel 'min_z #(X delta (B cap Z^d + z))'\n";
  os << "set key left top\n";
  os << "s = " << format_real(slope) << "\n";
  os << "c = 1.0\n";
  os << "ref(x) = c * x**s\n";
  os << "fit ref(x) '" << csv_name << "' every ::1 using 1:($7 > 0 ? $7 : 1/0) via c\n";
  os << "plot '" << csv_name << "' every ::1 using 1:($7 > 0 ? $7 : 1/0) with points pt 7 title 'asymmetry', \\\n";
  os << "     ref(x) with lines title sprintf('slope %.4f', s)\n";
  return os.str();
}

} // namespace latspec
