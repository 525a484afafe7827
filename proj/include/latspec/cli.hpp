#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include "latspec/fluct.hpp"

namespace latspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

/// Default output directory for fluctuate and mesh-export when --out is absent.
inline constexpr const char *kOutDirEnv = "LATSPEC_OUT_DIR";

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Git-style blob hash: SHA-1 of "blob <size>\0" followed by the contents.
std::string content_hash(const std::string &contents);

/// Sweep description read by `fluctuate`:
/// {"d": 2, "N": [100, 200] | "N_range": {"from", "to", "count", "spacing": "log"|"linear"},
///  "source": "ball"|"local"|"oracle", "tol", "local_budget", "chain_constants",
///  "quadrature_tol", "max_depth", "max_leaves"}
SweepSpec parse_sweep_spec(const std::string &json_text);
/// Canonical JSON of the fields that determine the records.
std::string canonical_sweep_json(const SweepSpec &spec);

struct FluctuateSummary {
  std::size_t rows = 0;
  std::size_t computed = 0;
  std::size_t reused = 0;
  std::size_t failures = 0;
  std::string manifest_hash;
};

/// Runs or resumes a sweep in out_dir, writing records.csv, plot.gp and
/// manifest.json.
FluctuateSummary fluctuate(const SweepSpec &spec, const std::filesystem::path &out_dir,
                           const std::string &input_path, std::ostream &log);

/// Entry point shared by the executable and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace latspec::cli
