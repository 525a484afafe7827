#include <doctest.h>

#include <filesystem>
#include <random>

#include "latspec/config_io.hpp"
#include "support.hpp"

using namespace latspec;

TEST_CASE("JSON and text formats round-trip") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = testing::uniform_int(rng, 1, 4);
    const auto X = testing::random_scattered(rng, d, static_cast<std::size_t>(testing::uniform_int(rng, 1, 30)), 1000);
    CHECK(parse_config_json(config_to_json(X)) == X);
    CHECK(parse_config_text(config_to_text(X)) == X);
  }
  CHECK(config_to_json(parse_config_json("[[1,0],[0,0]]")) == "[[0,0],[1,0]]");
}

TEST_CASE("text format skips comments and blank lines") {
  const auto X = parse_config_text("# domino\n\n0 0\n  1 0  \n");
  CHECK(X.size() == 2);
  CHECK(X.dim() == 2);
}

TEST_CASE("malformed input reports line and column") {
  CHECK_THROWS_AS(parse_config_text(""), ParseError);
  CHECK_THROWS_AS(parse_config_json("[]"), ParseError);
  try {
    parse_config_text("0 0\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  try {
    parse_config_text("0 0\n1 0 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_config_json("[[0,0],\n [1,0],\n [1,0]]");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() >= 1);
  }
  CHECK_THROWS_AS(parse_config_json("[[0,0],[1]]"), ParseError);
  CHECK_THROWS_AS(parse_config_json("[[0,0.5]]"), ParseError);
  CHECK_THROWS_AS(parse_config_json("{\"a\":1}"), ParseError);
  CHECK_THROWS_AS(parse_config_json("[[0,0]"), ParseError);
  CHECK_THROWS_AS(parse_config_text("0 0\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("99999999999 0\n"), ParseError);
}

TEST_CASE("lattice function text round-trips with full precision") {
  std::mt19937_64 rng(7);
  const auto X = testing::random_scattered(rng, 3, 40, 10);
  std::vector<double> v(X.size());
  for (auto &x : v) x = testing::uniform_real(rng, -1e3, 1e3) / 3.0;
  const LatticeFunction u(X, v);
  CHECK(parse_lattice_function_text(lattice_function_to_text(u)) == u);
  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("format detection and atomic file writes") {
  CHECK(format_for_path("a/b.json") == ConfigFormat::Json);
  CHECK(format_for_path("a/b.txt") == ConfigFormat::Text);
  CHECK(format_for_path("plain") == ConfigFormat::Text);

  const auto dir = std::filesystem::temp_directory_path() / "latspec_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "x.json", "[[0],[1]]");
  CHECK(read_file(dir / "x.json") == "[[0],[1]]");
  CHECK(load_config(dir / "x.json").size() == 2);
  CHECK_FALSE(std::filesystem::exists(dir / "x.json.tmp"));
  CHECK_THROWS_AS(read_file(dir / "missing"), std::filesystem::filesystem_error);
  std::filesystem::remove_all(dir);
}
