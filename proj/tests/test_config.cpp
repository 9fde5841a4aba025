#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "divlab/config.hpp"

using namespace divlab;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string("divlab_test_cfg_") + std::to_string(rand()) + ".ini";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("key value parsing with sections") {
  TempFile f(
      "# comment\n"
      "alpha = cf:[0;1,1,1,1,1,1,1,1]\n"
      "[schedule]\n"
      "tau = 2\n"
      "Cstar = 61\n");
  auto cfg = parse_config_file(f.path);
  CHECK(cfg.get("alpha") == "cf:[0;1,1,1,1,1,1,1,1]");
  CHECK(cfg.get_double("schedule.tau") == 2.0);
  CHECK(cfg.get_int("schedule.Cstar") == 61);
  CHECK(cfg.get_or("missing", "x") == "x");
  CHECK_THROWS_AS((void)cfg.get("missing"), ConfigError);
}

TEST_CASE("duplicates and malformed lines are named") {
  TempFile f("a = 1\na = 2\n");
  try {
    (void)parse_config_file(f.path);
    FAIL("expected duplicate-key error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("duplicate key a") != std::string::npos);
  }
  TempFile g("nonsense\n");
  CHECK_THROWS_AS((void)parse_config_file(g.path), ConfigError);
  CHECK_THROWS_AS((void)parse_config_file("no_such_file.ini"), ConfigError);
  CHECK(parse_config_file("no_such_file.ini", true).values.empty());
}

TEST_CASE("unknown keys are rejected by restriction") {
  TempFile f("order = 10\nwhoops = 1\n");
  auto cfg = parse_config_file(f.path);
  try {
    cfg.restrict_keys({"order"});
    FAIL("expected unknown-key error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("whoops") != std::string::npos);
  }
}

TEST_CASE("hash is stable and sensitive") {
  ExperimentConfig a;
  apply_override(a, "x", "1");
  a.seed = 7;
  ExperimentConfig b = a;
  CHECK(a.hash() == b.hash());
  apply_override(b, "x", "2");
  CHECK(a.hash() != b.hash());
  b = a;
  b.seed = 8;
  CHECK(a.hash() != b.hash());
}
