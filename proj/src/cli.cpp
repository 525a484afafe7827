#include "latspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "latspec/config_io.hpp"
#include "latspec/kuhn.hpp"
#include "latspec/optimize.hpp"
#include "latspec/rearrange.hpp"
#include "latspec/spectral.hpp"

namespace latspec::cli {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string content_hash(const std::string &contents) {
  const std::string blob = "blob " + std::to_string(contents.size()) + '\0' + contents;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

// ---------------------------------------------------------------------------
// Sweep specification

SweepSpec parse_sweep_spec(const std::string &json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error &e) {
    throw InputError(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("sweep spec must be a JSON object");
  try {
    SweepSpec s;
    s.dim = j.value("d", 2);
    if (s.dim < 1 || s.dim > 3)
      throw InputError("sweeps support d = 1, 2, 3; d = " + std::to_string(s.dim) +
                       " is outside the enumeration and solver budget");
    if (j.contains("N")) {
      for (const auto &n : j.at("N")) {
        const auto v = n.get<long long>();
        if (v < 1) throw InputError("every N must be at least 1");
        s.N_values.push_back(static_cast<std::size_t>(v));
      }
    } else if (j.contains("N_range")) {
      const auto &r = j.at("N_range");
      const double from = r.at("from").get<double>();
      const double to = r.at("to").get<double>();
      const int count = r.value("count", 2);
      const std::string spacing = r.value("spacing", std::string("log"));
      if (!(from >= 1) || !(to >= from) || count < 1) throw InputError("N_range needs 1 <= from <= to and count >= 1");
      if (spacing != "log" && spacing != "linear") throw InputError("N_range spacing must be log or linear");
      for (int k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        const double v = spacing == "log" ? from * std::pow(to / from, t) : from + (to - from) * t;
        s.N_values.push_back(static_cast<std::size_t>(std::llround(v)));
      }
    } else {
      throw InputError("sweep spec needs N or N_range");
    }
    std::sort(s.N_values.begin(), s.N_values.end());
    s.N_values.erase(std::unique(s.N_values.begin(), s.N_values.end()), s.N_values.end());
    if (s.N_values.empty()) throw InputError("sweep spec lists no N");

    s.source = parse_config_source(j.value("source", std::string("ball")));
    if (s.source == ConfigSource::Oracle)
      for (auto n : s.N_values) check_enumeration_budget(static_cast<int>(n), s.dim);
    s.solver.tol = j.value("tol", s.solver.tol);
    if (!(s.solver.tol > 0)) throw InputError("tol must be positive");
    s.local_budget = j.value("local_budget", s.local_budget);
    if (s.local_budget < 1) throw InputError("local_budget must be positive");
    s.chain_constants = j.value("chain_constants", s.chain_constants);
    s.quadrature.tol = j.value("quadrature_tol", s.quadrature.tol);
    s.quadrature.max_depth = j.value("max_depth", s.quadrature.max_depth);
    s.quadrature.max_leaves = j.value("max_leaves", s.quadrature.max_leaves);
    return s;
  } catch (const Json::exception &e) {
    throw InputError(std::string("bad sweep spec field: ") + e.what());
  } catch (const LatticeError &e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument &e) {
    throw InputError(e.what());
  }
}

std::string canonical_sweep_json(const SweepSpec &spec) {
  Json j;
  j["d"] = spec.dim;
  j["N"] = spec.N_values;
  j["source"] = to_string(spec.source);
  j["tol"] = spec.solver.tol;
  j["max_iterations"] = spec.solver.max_iterations;
  j["block_size"] = spec.solver.block_size;
  j["local_budget"] = spec.local_budget;
  j["chain_constants"] = spec.chain_constants;
  j["quadrature_tol"] = spec.quadrature.tol;
  j["max_depth"] = spec.quadrature.max_depth;
  j["max_leaves"] = spec.quadrature.max_leaves;
  return j.dump();
}

namespace {

constexpr const char *kCsvVersionLine = "# records v1 manifest ";

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::map<std::size_t, ExperimentRecord> read_existing(const fs::path &csv, const std::string &hash, std::ostream &log) {
  std::map<std::size_t, ExperimentRecord> out;
  if (!fs::exists(csv)) return out;
  std::istringstream in(read_file(csv));
  std::string line;
  if (!std::getline(in, line) || line != kCsvVersionLine + hash) {
    log << "warning: " << csv.string() << " belongs to a different manifest; recomputing every row\n";
    return out;
  }
  if (!std::getline(in, line) || line != records_csv_header()) {
    log << "warning: " << csv.string() << " has an unexpected header; recomputing every row\n";
    return out;
  }
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto r = record_from_csv(line);
      if (r.failure.empty()) out[r.N] = std::move(r);
    } catch (const ParseError &e) {
      log << "warning: " << csv.string() << " line " << lineno << " unreadable (" << e.what() << "); recomputing it\n";
    }
  }
  return out;
}

} // namespace

FluctuateSummary fluctuate(const SweepSpec &spec, const fs::path &out_dir, const std::string &input_path,
                           std::ostream &log) {
  const std::string canonical = canonical_sweep_json(spec);
  const std::string hash = content_hash(canonical);
  fs::create_directories(out_dir);
  const fs::path csv = out_dir / "records.csv";

  auto existing = read_existing(csv, hash, log);
  SweepSpec todo = spec;
  todo.N_values.clear();
  for (auto n : spec.N_values)
    if (!existing.contains(n)) todo.N_values.push_back(n);

  FluctuateSummary summary;
  summary.manifest_hash = hash;
  summary.reused = spec.N_values.size() - todo.N_values.size();
  std::vector<ExperimentRecord> fresh;
  if (!todo.N_values.empty()) fresh = run_experiment(todo);
  summary.computed = fresh.size();

  Json wall = Json::object();
  for (auto &r : fresh) {
    wall[std::to_string(r.N)] = r.wall_time;
    existing[r.N] = std::move(r);
  }
  std::vector<ExperimentRecord> records;
  for (auto n : spec.N_values) records.push_back(existing.at(n));

  std::string text = kCsvVersionLine + hash + "\n" + records_csv_header() + "\n";
  Json failures = Json::array();
  for (const auto &r : records) {
    text += record_to_csv(r) + "\n";
    if (!r.failure.empty()) {
      ++summary.failures;
      failures.push_back({{"N", r.N}, {"failure", r.failure}});
      log << "warning: N = " << r.N << " failed: " << r.failure << "\n";
    }
  }
  summary.rows = records.size();
  write_file_atomic(csv, text);
  write_file_atomic(out_dir / "plot.gp", gnuplot_script("records.csv", spec.dim));

  Json fit = nullptr;
  try {
    const auto f = fit_exponent(records);
    fit = {{"slope", f.slope},
           {"intercept", f.intercept},
           {"residual", f.residual},
           {"points", f.points},
           {"target_slope", 1.0 - 1.0 / (2.0 * spec.dim)}};
  } catch (const std::invalid_argument &) {
  }

  Json manifest;
  manifest["command"] = "fluctuate";
  manifest["parameters"] = Json::parse(canonical);
  manifest["input"] = input_path;
  manifest["output_dir"] = out_dir.string();
  manifest["content_hash"] = hash;
  manifest["timestamp"] = utc_timestamp();
  manifest["threads"] = spec.threads;
  manifest["rows"] = summary.rows;
  manifest["computed"] = summary.computed;
  manifest["reused"] = summary.reused;
  manifest["wall_time"] = wall;
  manifest["failures"] = failures;
  manifest["fit"] = fit;
  manifest["lambda_unit_measure_ball"] = lambda_unit_measure_ball(spec.dim);
  manifest["lambda_unit_radius_ball"] = lambda_unit_radius_ball(spec.dim);
  write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Globals {
  int dim = 0;
  double tol = SolverOptions{}.tol;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string format = "json";

  SolverOptions solver() const {
    SolverOptions s;
    s.tol = tol;
    return s;
  }
  int dim_or(int fallback) const { return dim > 0 ? dim : fallback; }
};

Json real_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json config_json(const Config &X) { return Json::parse(config_to_json(X)); }

Json site_json(const Site &s, int dim) {
  Json a = Json::array();
  for (int k = 0; k < dim; ++k) a.push_back(s[k]);
  return a;
}

void emit(std::ostream &out, const Json &j, const std::string &format) {
  if (format == "csv") {
    std::string header, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += it.key();
      std::string cell;
      if (it->is_string())
        cell = it->get<std::string>();
      else if (it->is_number_float())
        cell = format_real(it->get<double>());
      else if (it->is_null())
        cell = "";
      else
        cell = it->dump();
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : cell) {
          if (c == '"') q += '"';
          q += c;
        }
        cell = q + "\"";
      }
      row += cell;
    }
    out << header << '\n' << row << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
}

Config load_checked(const std::string &path, const Globals &g) {
  if (!fs::exists(path)) throw IoError("cannot open " + path);
  Config X = parse_config(read_file(path), format_for_path(path));
  if (g.dim > 0 && X.dim() != g.dim)
    throw InputError("configuration has dimension " + std::to_string(X.dim()) + " but --dim is " +
                     std::to_string(g.dim));
  return X;
}

fs::path default_out_dir() {
  if (const char *env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

Json flags_json(const StructureFlags &f) {
  return {{"connected", f.connected},
          {"direction_convex", f.direction_convex},
          {"symmetric", f.symmetric},
          {"diameter", f.diameter},
          {"diameter_ratio", f.diameter_ratio}};
}

Json minimization_json(const MinimizationResult &r, std::size_t N, int dim) {
  Json j;
  j["N"] = N;
  j["d"] = dim;
  j["m_lambda_N"] = r.m_lambda_N;
  j["method"] = r.method;
  j["alpha_N"] = r.alpha_N;
  j["evaluations"] = r.evaluations;
  j["flags"] = flags_json(r.flags);
  Json mins = Json::array();
  if (r.minimizers.empty())
    mins.push_back(config_json(r.best));
  else
    for (const auto &X : r.minimizers) mins.push_back(config_json(X));
  j["minimizers"] = mins;
  j["trace"] = r.trace;
  return j;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Spectral lattice configurations: eigenvalues, rearrangements, Kuhn meshes and fluctuation sweeps",
               "latspec"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--dim", g.dim, "Lattice dimension (checked against input files)")->check(CLI::Range(1, kMaxDim));
  app.add_option("--tol", g.tol, "Eigensolver residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for randomized starts");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string config_path;
  std::string dump_path;
  bool ordered_pairs = false;
  auto *eig = app.add_subcommand("eig", "First Dirichlet eigenvalue lambda_N of a configuration");
  eig->add_option("config", config_path, "Configuration file (.json or text)")->required();
  eig->add_option("--dump-eigenfunction", dump_path, "Write the eigenfunction in LatticeFunction text format");
  eig->add_flag("--ordered-pairs", ordered_pairs, "Report energies with every neighbour pair counted twice");

  auto *per = app.add_subcommand("perimeter", "Perimeter, connectivity and convexity of a configuration");
  per->add_option("config", config_path)->required();

  int direction = -1;
  std::string out_path;
  auto *rea = app.add_subcommand("rearrange", "Symmetric decreasing rearrangement of a configuration");
  rea->add_option("config", config_path)->required();
  rea->add_option("--direction", direction, "Index into the direction set; omit for the full rearrangement");
  rea->add_option("--out", out_path, "Write the rearranged configuration");

  auto *zet = app.add_subcommand("zeta", "Kuhn continuum extension of a configuration");
  zet->add_option("config", config_path)->required();

  auto *fem = app.add_subcommand("fem", "P1 finite-element eigenvalue on the continuum extension");
  fem->add_option("config", config_path)->required();

  bool continuum = false;
  double quad_tol = 0;
  auto *asy = app.add_subcommand("asym", "Asymmetry against the lattice ball of the same volume");
  asy->add_option("config", config_path)->required();
  asy->add_flag("--continuum", continuum, "Also compute the continuum symmetric difference");
  asy->add_option("--quad-tol", quad_tol, "Absolute quadrature tolerance (default 1e-6 |zeta(X)|)");

  std::size_t N = 0;
  bool exact = false, local = false;
  std::string from_path;
  std::size_t budget = LocalSearchOptions{}.max_evaluations;
  auto *mini = app.add_subcommand("minimize", "Exact or local minimization of lambda_N");
  mini->add_option("N", N, "Number of sites")->required()->check(CLI::PositiveNumber);
  auto *exact_flag = mini->add_flag("--exact", exact, "Exhaustive search over connected configurations");
  auto *local_flag = mini->add_flag("--local", local, "Local search");
  exact_flag->excludes(local_flag);
  mini->add_option("--from", from_path, "Seed configuration for --local (default: random connected)");
  mini->add_option("--budget", budget, "Eigenvalue evaluations for --local")->check(CLI::PositiveNumber);

  bool ball = false, cube = false, with_config = false;
  auto *comp = app.add_subcommand("competitor", "Ball or cube competitor configurations");
  comp->add_option("N", N)->required()->check(CLI::PositiveNumber);
  auto *ball_flag = comp->add_flag("--ball", ball, "Padded lattice ball");
  auto *cube_flag = comp->add_flag("--cube", cube, "Padded cube with cone profile");
  ball_flag->excludes(cube_flag);
  comp->add_flag("--with-config", with_config, "Include the configuration in the output");

  std::string sweep_path, out_dir;
  auto *flu = app.add_subcommand("fluctuate", "Fluctuation sweep: records.csv, plot.gp, manifest.json");
  flu->add_option("sweep", sweep_path, "Sweep specification (JSON)")->required();
  flu->add_option("--out", out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");

  std::string summary_path;
  auto *mex = app.add_subcommand("mesh-export", "Write the Kuhn mesh of a configuration as legacy VTK");
  mex->add_option("config", config_path)->required();
  mex->add_option("--out", out_path, "VTK file (default mesh.vtk in the output directory)");
  mex->add_option("--summary", summary_path, "Also write the JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eig->parsed()) {
      const Config X = load_checked(config_path, g);
      const auto r = lambda_N(X, g.solver());
      const double f = ordered_pairs ? 2.0 : 1.0;
      Json j;
      j["n"] = r.n;
      j["d"] = r.dim;
      j["lambda_N"] = f * r.lambda_N;
      j["mu_min"] = f * r.mu_min;
      j["gap"] = real_or_null(f * r.gap);
      j["residual"] = r.residual;
      j["iterations"] = r.iterations;
      j["energy_convention"] = ordered_pairs ? "ordered-pairs" : "unordered-edges";
      if (!dump_path.empty()) write_file_atomic(dump_path, lattice_function_to_text(r.eigenfunction));
      emit(out, j, g.format);
    } else if (per->parsed()) {
      const Config X = load_checked(config_path, g);
      Json j;
      j["n"] = X.size();
      j["d"] = X.dim();
      j["perimeter"] = perimeter(X);
      j["scaled_perimeter"] = scaled_perimeter(X);
      j["connected"] = is_connected(X);
      j["components"] = connected_components(X).size();
      j["direction_convex"] = is_direction_convex(X);
      j["diameter"] = diameter(X);
      emit(out, j, g.format);
    } else if (rea->parsed()) {
      const Config X = load_checked(config_path, g);
      const auto D = direction_set(X.dim());
      if (direction >= static_cast<int>(D.size()))
        throw InputError("--direction must be below " + std::to_string(D.size()));
      const Config R = direction < 0 ? set_rearrange(X) : set_rearrange_direction(X, D[static_cast<std::size_t>(direction)]);
      Json j;
      j["n"] = X.size();
      j["d"] = X.dim();
      j["direction"] = direction < 0 ? Json("all") : site_json(D[static_cast<std::size_t>(direction)].vec, X.dim());
      j["lambda_before"] = lambda_N(X, g.solver()).lambda_N;
      j["lambda_after"] = lambda_N(R, g.solver()).lambda_N;
      j["symmetric"] = is_symmetric(R);
      j["config"] = config_json(R);
      if (!out_path.empty())
        write_file_atomic(out_path, format_for_path(out_path) == ConfigFormat::Json ? config_to_json(R) + "\n"
                                                                                      : config_to_text(R));
      emit(out, j, g.format);
    } else if (zet->parsed()) {
      const Config X = load_checked(config_path, g);
      const auto mesh = zeta(X);
      const auto P = perimeter(X);
      Json j = Json::parse(mesh_summary_json(mesh));
      j["N"] = X.size();
      j["perimeter"] = P;
      j["measure_excess_per_perimeter"] = (mesh.measure() - static_cast<double>(X.size())) / static_cast<double>(P);
      emit(out, j, g.format);
    } else if (fem->parsed()) {
      const Config X = load_checked(config_path, g);
      const auto mesh = zeta(X);
      const auto r = fem_first_eigenvalue(mesh, g.solver());
      const auto lam = lambda_N(X, g.solver());
      const auto fk = fk_deficit(mesh, r.mu);
      const double Nd = static_cast<double>(X.size());
      Json j;
      j["N"] = X.size();
      j["d"] = X.dim();
      j["fem_mu"] = r.mu;
      j["n_dof"] = r.n_dof;
      j["lambda_N"] = lam.lambda_N;
      j["scaled_discrete"] = std::pow(Nd, -2.0 / X.dim()) * lam.lambda_N;
      j["zeta_measure"] = mesh.measure();
      j["lambda_ball_same_measure"] = fk.lambda_ball;
      j["fk_deficit"] = fk.deficit;
      j["sqrt_fk_deficit"] = fk.sqrt_deficit;
      j["deficit_clamped"] = fk.clamped;
      j["residual"] = r.residual;
      j["iterations"] = r.iterations;
      emit(out, j, g.format);
    } else if (asy->parsed()) {
      const Config X = load_checked(config_path, g);
      auto r = discrete_asymmetry(X);
      Json j;
      j["N"] = X.size();
      j["d"] = X.dim();
      j["radius"] = faber_radius(static_cast<double>(X.size()), X.dim());
      j["cap_size"] = r.cap_size;
      j["discrete_asym"] = r.discrete_asym;
      j["best_shift"] = site_json(r.best_shift, X.dim());
      if (continuum) {
        QuadratureOptions q;
        q.tol = quad_tol;
        add_continuum_asymmetry(r, zeta(X), q);
        j["continuum_asym"] = *r.continuum_asym;
        j["quadrature_error"] = *r.quadrature_error;
      }
      emit(out, j, g.format);
    } else if (mini->parsed()) {
      if (!exact && !local) throw InputError("minimize needs --exact or --local");
      const int dim = g.dim_or(2);
      if (exact) {
        const auto r = oracle_minimize(static_cast<int>(N), dim, g.solver());
        emit(out, minimization_json(r, N, dim), g.format);
      } else {
        Config seed = [&] {
          if (!from_path.empty()) return load_checked(from_path, g);
          std::mt19937_64 rng(g.seed);
          return random_connected_config(N, dim, rng);
        }();
        if (seed.size() != N)
          throw InputError("seed configuration has " + std::to_string(seed.size()) + " sites, expected " +
                           std::to_string(N));
        LocalSearchOptions lo;
        lo.max_evaluations = budget;
        lo.solver = g.solver();
        auto r = local_search(seed, lo);
        const auto bc = ball_competitor(N, seed.dim(), g.solver());
        r.alpha_N = std::max(0.0, r.m_lambda_N - std::min(r.m_lambda_N, bc.lambda));
        emit(out, minimization_json(r, N, seed.dim()), g.format);
      }
    } else if (comp->parsed()) {
      if (!ball && !cube) throw InputError("competitor needs --ball or --cube");
      const int dim = g.dim_or(2);
      Json j;
      j["N"] = N;
      j["d"] = dim;
      if (ball) {
        const auto b = ball_competitor(N, dim, g.solver());
        j["kind"] = "ball";
        j["lambda_N"] = b.lambda;
        j["lambda_ref"] = b.lambda_ref;
        j["lambda_unit_radius"] = b.lambda_unit_radius;
        j["radius_sq"] = b.radius_sq;
        j["padding"] = b.padding;
        j["fitted_C"] = b.fitted_C;
        if (with_config) j["config"] = config_json(b.config);
      } else {
        const auto c = cube_competitor_bound(N, dim);
        j["kind"] = "cube";
        j["k"] = c.k;
        j["energy"] = c.energy;
        j["lambda_N"] = lambda_N(c.config, g.solver()).lambda_N;
        if (with_config) j["config"] = config_json(c.config);
      }
      emit(out, j, g.format);
    } else if (flu->parsed()) {
      if (!fs::exists(sweep_path)) throw IoError("cannot open " + sweep_path);
      SweepSpec spec = parse_sweep_spec(read_file(sweep_path));
      spec.threads = g.threads;
      if (g.tol != SolverOptions{}.tol) spec.solver.tol = g.tol;
      const fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
      const auto s = fluctuate(spec, dir, sweep_path, err);
      Json j;
      j["rows"] = s.rows;
      j["computed"] = s.computed;
      j["reused"] = s.reused;
      j["failures"] = s.failures;
      j["content_hash"] = s.manifest_hash;
      j["records"] = (dir / "records.csv").string();
      const auto records_text = read_file(dir / "records.csv");
      std::vector<ExperimentRecord> recs;
      std::istringstream in(records_text);
      std::string line;
      std::getline(in, line);
      std::getline(in, line);
      while (std::getline(in, line))
        if (!line.empty()) recs.push_back(record_from_csv(line));
      try {
        const auto f = fit_exponent(recs);
        j["slope"] = f.slope;
      } catch (const std::invalid_argument &) {
        j["slope"] = nullptr;
      }
      j["target_slope"] = 1.0 - 1.0 / (2.0 * spec.dim);
      emit(out, j, g.format);
    } else if (mex->parsed()) {
      const Config X = load_checked(config_path, g);
      const auto mesh = zeta(X);
      const fs::path vtk = out_path.empty() ? default_out_dir() / "mesh.vtk" : fs::path(out_path);
      if (vtk.has_parent_path()) fs::create_directories(vtk.parent_path());
      write_file_atomic(vtk, mesh_to_vtk(mesh));
      const std::string summary = mesh_summary_json(mesh);
      if (!summary_path.empty()) write_file_atomic(summary_path, summary + "\n");
      Json j = Json::parse(summary);
      j["vtk"] = vtk.string();
      emit(out, j, g.format);
    }
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const LatticeError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const RearrangeError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SolverError &e) {
    err << "solver error: " << e.what() << " (iterations " << e.iterations() << ", residual " << e.residual()
        << ")\n";
    return kExitSolver;
  } catch (const IoError &e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error &e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

} // namespace latspec::cli
