#include "latspec/config_io.hpp"

#include <cerrno>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace latspec {

ParseError::ParseError(const std::string &what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line), column_(column) {}

namespace {

std::pair<std::size_t, std::size_t> line_column_at(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Site site_from_coords(const std::vector<long long> &coords, std::size_t line, std::size_t col) {
  Site s;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] > kCoordLimit || coords[k] < -kCoordLimit) throw ParseError("coordinate out of range", line, col);
    s[static_cast<int>(k)] = static_cast<std::int32_t>(coords[k]);
  }
  return s;
}

Config make_config(int dim, std::vector<Site> sites, std::size_t line, std::size_t col) {
  try {
    return Config(dim, std::move(sites));
  } catch (const LatticeError &e) {
    throw ParseError(e.what(), line, col);
  }
}

} // namespace

Config parse_config_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    auto [line, col] = line_column_at(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
  }
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty array of sites", 1, 1);
  int dim = 0;
  std::vector<Site> sites;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const auto &entry = j[n];
    if (!entry.is_array() || entry.empty())
      throw ParseError("site " + std::to_string(n) + " is not a nonempty coordinate array", 1, 1);
    if (dim == 0) dim = static_cast<int>(entry.size());
    if (static_cast<int>(entry.size()) != dim)
      throw ParseError("site " + std::to_string(n) + " has " + std::to_string(entry.size()) +
                           " coordinates, expected " + std::to_string(dim),
                       1, 1);
    if (dim > kMaxDim) throw ParseError("dimension above " + std::to_string(kMaxDim) + " is not supported", 1, 1);
    std::vector<long long> coords;
    for (const auto &c : entry) {
      if (!c.is_number_integer()) throw ParseError("site " + std::to_string(n) + " has a non-integer coordinate", 1, 1);
      coords.push_back(c.get<long long>());
    }
    sites.push_back(site_from_coords(coords, 1, 1));
  }
  return make_config(dim, std::move(sites), 1, 1);
}

Config parse_config_text(const std::string &text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  int dim = 0;
  std::vector<Site> sites;
  while (std::getline(in, raw)) {
    ++lineno;
    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::vector<long long> coords;
    std::size_t pos = first;
    while (pos < raw.size()) {
      pos = raw.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) break;
      const char *begin = raw.c_str() + pos;
      char *end = nullptr;
      errno = 0;
      const long long v = std::strtoll(begin, &end, 10);
      if (end == begin || errno == ERANGE || (*end != '\0' && *end != ' ' && *end != '\t' && *end != '\r'))
        throw ParseError("expected an integer coordinate", lineno, pos + 1);
      coords.push_back(v);
      pos = static_cast<std::size_t>(end - raw.c_str());
    }
    if (dim == 0) dim = static_cast<int>(coords.size());
    if (static_cast<int>(coords.size()) != dim)
      throw ParseError("expected " + std::to_string(dim) + " coordinates, found " + std::to_string(coords.size()),
                       lineno, first + 1);
    if (dim > kMaxDim) throw ParseError("dimension above " + std::to_string(kMaxDim) + " is not supported", lineno, 1);
    sites.push_back(site_from_coords(coords, lineno, first + 1));
  }
  if (sites.empty()) throw ParseError("configuration is empty", lineno == 0 ? 1 : lineno, 1);
  return make_config(dim, std::move(sites), lineno, 1);
}

Config parse_config(const std::string &text, ConfigFormat format) {
  return format == ConfigFormat::Json ? parse_config_json(text) : parse_config_text(text);
}

ConfigFormat format_for_path(const std::filesystem::path &path) {
  return path.extension() == ".json" ? ConfigFormat::Json : ConfigFormat::Text;
}

Config load_config(const std::filesystem::path &path) { return parse_config(read_file(path), format_for_path(path)); }

std::string config_to_json(const Config &X) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (int k = 0; k < X.dim(); ++k) {
      if (k) os << ',';
      os << X[i][k];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string config_to_text(const Config &X) {
  std::ostringstream os;
  for (const auto &s : X.sites()) {
    for (int k = 0; k < X.dim(); ++k) {
      if (k) os << ' ';
      os << s[k];
    }
    os << '\n';
  }
  return os.str();
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string lattice_function_to_text(const LatticeFunction &u) {
  std::ostringstream os;
  for (const auto &[p, v] : u.entries()) {
    for (int k = 0; k < u.dim(); ++k) os << p[k] << ' ';
    os << format_real(v) << '\n';
  }
  return os.str();
}

LatticeFunction parse_lattice_function_text(const std::string &text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  int dim = 0;
  std::vector<LatticeFunction::Entry> entries;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty() || tokens.front()[0] == '#') continue;
    if (dim == 0) dim = static_cast<int>(tokens.size()) - 1;
    if (dim < 1 || static_cast<int>(tokens.size()) != dim + 1)
      throw ParseError("expected coordinates followed by a value", lineno, 1);
    std::vector<long long> coords;
    for (int k = 0; k < dim; ++k) {
      std::size_t used = 0;
      try {
        coords.push_back(std::stoll(tokens[k], &used));
      } catch (const std::exception &) {
        used = 0;
      }
      if (used != tokens[k].size()) throw ParseError("expected an integer coordinate", lineno, 1);
    }
    double v = 0;
    std::size_t used = 0;
    try {
      v = std::stod(tokens.back(), &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tokens.back().size()) throw ParseError("expected a real value", lineno, 1);
    entries.emplace_back(site_from_coords(coords, lineno, 1), v);
  }
  if (entries.empty()) throw ParseError("lattice function is empty", lineno == 0 ? 1 : lineno, 1);
  try {
    return LatticeFunction(dim, std::move(entries));
  } catch (const LatticeError &e) {
    throw ParseError(e.what(), lineno, 1);
  }
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", tmp, std::make_error_code(std::errc::io_error));
    out << contents;
    out.flush();
    if (!out) throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot open for reading", path, std::make_error_code(std::errc::no_such_file_or_directory));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace latspec
