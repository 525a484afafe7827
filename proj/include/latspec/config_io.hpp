#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "latspec/lattice.hpp"
#include "latspec/lattice_function.hpp"

namespace latspec {

/// Malformed configuration or function input. Line and column are 1-based;
/// zero means unknown.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_, column_;
};

enum class ConfigFormat { Json, Text };

/// JSON: array of integer coordinate arrays, e.g. [[0,0],[1,0]].
Config parse_config_json(const std::string &text);
/// Text: one site per line, coordinates separated by whitespace. Blank lines
/// and lines starting with '#' are skipped.
Config parse_config_text(const std::string &text);
Config parse_config(const std::string &text, ConfigFormat format);

/// `.json` selects JSON, anything else the text format.
ConfigFormat format_for_path(const std::filesystem::path &path);
Config load_config(const std::filesystem::path &path);

std::string config_to_json(const Config &X);
std::string config_to_text(const Config &X);

/// One site per line: coordinates then value with 17 significant digits.
std::string lattice_function_to_text(const LatticeFunction &u);
LatticeFunction parse_lattice_function_text(const std::string &text);

/// Shortest round-trip decimal text for a double ("%.17g").
std::string format_real(double x);

/// Write through a temporary file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);
std::string read_file(const std::filesystem::path &path);

} // namespace latspec
