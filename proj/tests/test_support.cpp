#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "conelab/config.hpp"
#include "conelab/parallel.hpp"
#include "conelab/report.hpp"

using namespace conelab;
namespace fs = std::filesystem;

TEST_CASE("empty config gives the defaults") {
  const auto cfg = parse_config("  \n");
  CHECK(cfg.domain.n == 2);
  CHECK(cfg.grid.q == 0.98);
  CHECK(cfg.grid.J == 96);
  CHECK(cfg.sweeps.p.back() == INFINITY);
  CHECK(cfg.tol.roundtrip == 0.02);
}

TEST_CASE("config overrides and validation") {
  const auto cfg = parse_config(R"({"grid": {"q": 0.9, "J": 12}, "sweeps": {"p": [1, "inf"]}, "suite": ["jump"]})");
  CHECK(cfg.grid.q == 0.9);
  CHECK(cfg.grid.J == 12);
  CHECK(cfg.sweeps.p.size() == 2);
  CHECK(std::isinf(cfg.sweeps.p[1]));
  CHECK(cfg.suite == std::vector<std::string>{"jump"});
  CHECK_THROWS_AS(parse_config(R"({"domain": {"omega": 1.6}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"q": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/conelab.json"), ConfigError);
}

TEST_CASE("csv formatting") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  t.add_row({format_number(INFINITY), format_number(0.5)});
  CHECK(t.str() == "a,b\n1,\"x,y\"\ninf,0.5\n");
  CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("atomic writes leave no temporaries") {
  const fs::path dir = fs::temp_directory_path() / "conelab_test_atomic";
  fs::remove_all(dir);
  const fs::path p = dir / "sub" / "out.csv";
  write_atomic(p, "first\n");
  write_atomic(p, "second\n");
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second\n");
  int files = 0;
  for (const auto& e : fs::directory_iterator(p.parent_path())) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  fs::remove_all(dir);
}

TEST_CASE("worker pool") {
  setenv("CONELAB_THREADS", "2", 1);
  CHECK(worker_count() <= 2);
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("CONELAB_THREADS");
}
