#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef BERGMANLAB_BIN
#error "BERGMANLAB_BIN must point at the command line binary"
#endif

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

int run_tool(const std::string& args, const fs::path& dir) {
  fs::create_directories(dir);
  std::string cmd = std::string(BERGMANLAB_BIN) + " " + args + " > " +
                    (dir / "stdout.txt").string() + " 2> " +
                    (dir / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
#ifdef _WIN32
  return rc;
#else
  return WEXITSTATUS(rc);
#endif
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  fs::create_directories(dir);
  fs::path p = dir / "config.json";
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_root() {
  return fs::temp_directory_path() / "bergmanlab_cli_test";
}

}  // namespace

TEST_CASE("kernel-eval runs, writes the CSV schema, and reruns identically") {
  fs::path dir = scratch_root() / "eval";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "domain": {"kind": "disc", "radius": 1.0},
    "weight": {"alpha": 0.0},
    "d_max": 2000,
    "tolerance": 1e-12,
    "points": [{"x": [0.3, 0.0], "y": [0.2, 0.0]}]
  })");
  int rc = run_tool("kernel-eval --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 0);

  std::string csv = slurp(dir / "kernel_eval.csv");
  REQUIRE_FALSE(csv.empty());
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "x_re,x_im,y_re,y_im,K_re,K_im,tail_bound");
  REQUIRE(std::getline(lines, row));
  // Columns: x_re,x_im,y_re,y_im,K_re,K_im,tail_bound.
  std::istringstream cells(row);
  std::string cell;
  std::vector<double> vals;
  while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
  REQUIRE(vals.size() == 7);
  double closed = 1.0 / (kPi * std::pow(1.0 - 0.06, 2.0));
  CHECK(vals[4] == doctest::Approx(closed).epsilon(1e-10));
  CHECK(std::abs(vals[5]) <= 1e-15);
  CHECK(vals[6] <= 1e-12);

  std::string report = slurp(dir / "report.json");
  CHECK(report.find("\"check_id\"") != std::string::npos);
  CHECK(report.find("\"paper_ref\"") != std::string::npos);
  CHECK(report.find("\"pass\": true") != std::string::npos);

  // Byte-identical rerun.
  fs::path dir2 = scratch_root() / "eval_rerun";
  fs::remove_all(dir2);
  fs::create_directories(dir2);
  int rc2 = run_tool("kernel-eval --config " + cfg.string() + " --out " +
                         dir2.string(),
                     dir2);
  CHECK(rc2 == 0);
  CHECK(slurp(dir2 / "kernel_eval.csv") == csv);
  CHECK(slurp(dir2 / "report.json") == report);
}

TEST_CASE("config mistakes exit with the dedicated code") {
  fs::path dir = scratch_root() / "badkey";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "domain": {"kind": "disc"},
    "bogus": 1,
    "points": [{"x": [0.1, 0.0], "y": [0.1, 0.0]}]
  })");
  CHECK(run_tool("kernel-eval --config " + cfg.string() + " --out " +
                     dir.string(),
                 dir) == 2);

  fs::path dir2 = scratch_root() / "missingcfg";
  CHECK(run_tool("kernel-eval --config " + (dir2 / "nope.json").string() +
                     " --out " + dir2.string(),
                 dir2) == 2);

  fs::path dir3 = scratch_root() / "badsub";
  CHECK(run_tool("no-such-task --config " + cfg.string(), dir3) == 2);

  fs::path dir4 = scratch_root() / "badjson";
  auto broken = write_config(dir4, "{ not json");
  CHECK(run_tool("kernel-eval --config " + broken.string() + " --out " +
                     dir4.string(),
                 dir4) == 2);
}

TEST_CASE("failing checks exit with code 3 and still write the report") {
  fs::path dir = scratch_root() / "failcheck";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "domain": {"kind": "disc", "radius": 1.0},
    "weight": {"alpha": 0.0},
    "d_max": 20000,
    "rho0": 0.1,
    "levels": 8,
    "min_points": 5,
    "exponent": 2.0,
    "constant_tolerance": 1e-15
  })");
  int rc = run_tool("kernel-asympt --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 3);
  std::string report = slurp(dir / "report.json");
  CHECK(report.find("\"pass\": false") != std::string::npos);
  CHECK_FALSE(slurp(dir / "kernel_asympt.csv").empty());
}

TEST_CASE("uncertifiable computations exit with code 1") {
  fs::path dir = scratch_root() / "comperr";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "domain": {"kind": "disc", "radius": 1.0},
    "weight": {"alpha": 0.0},
    "d_max": 100,
    "tolerance": 1e-10,
    "points": [{"x": [0.999, 0.0], "y": [0.999, 0.0]}]
  })");
  CHECK(run_tool("kernel-eval --config " + cfg.string() + " --out " +
                     dir.string(),
                 dir) == 1);
}

TEST_CASE("continuation-scan covers the contour and the grid") {
  fs::path dir = scratch_root() / "scan";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "s_rect": {"lo": [0.3, -0.2], "hi": [0.9, 0.2]},
    "x": [0.4, 0.1],
    "y": [0.3, -0.1],
    "nodes_per_side": 128,
    "contour_tolerance": 1e-3,
    "s_grid": [[0.5, 0.0], [0.25, 0.1]],
    "grid_tolerance": 1e-12
  })");
  int rc = run_tool("continuation-scan --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 0);
  std::string csv = slurp(dir / "continuation_scan.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "s_re,s_im,K_re,K_im");
  int rows = 0;
  for (std::string row; std::getline(lines, row);) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("sobolev-table emits the ratio table without a second decade") {
  fs::path dir = scratch_root() / "table";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "m": 1,
    "s": 0.3,
    "k_max": 2000,
    "variants": ["derivative_sum", "normal_sum"]
  })");
  int rc = run_tool("sobolev-table --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 0);
  std::string csv = slurp(dir / "sobolev_table.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "k,derivative_sum,normal_sum");
  std::string report = slurp(dir / "report.json");
  CHECK(report.find("equivalence-derivative_sum-vs-normal_sum") !=
        std::string::npos);
  CHECK(report.find("stability-") == std::string::npos);
}

TEST_CASE("toeplitz-verify contracts toward the reference section") {
  fs::path dir = scratch_root() / "toeplitz";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "radius": 1.0,
    "alpha": 0.5,
    "angular": [{"a": 0, "b": 0, "re": 1.0, "im": 0.0}],
    "sizes": [8, 16],
    "reference_size": 32,
    "pairs": [{"x": [0.3, 0.0], "y": [0.2, 0.1]}],
    "tolerance": 1e-8
  })");
  int rc = run_tool("toeplitz-verify --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 0);
  std::string report = slurp(dir / "report.json");
  CHECK(report.find("route-agreement") != std::string::npos);
  CHECK(report.find("section-contraction-8-16") != std::string::npos);
}

TEST_CASE("toeplitz-verify treats roundoff-level sections as converged") {
  // A low-degree angular weight at interior points reaches exact
  // floating-point agreement with the reference long before the smallest
  // section size; the contraction rows must report convergence, not divide
  // the two roundoff-level deviations.
  fs::path dir = scratch_root() / "toeplitz_converged";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "radius": 1.0,
    "alpha": 0.0,
    "angular": [{"a": 0, "b": 0, "re": 1.2, "im": 0.0},
                {"a": 1, "b": 0, "re": 0.3, "im": 0.1},
                {"a": 0, "b": 1, "re": 0.3, "im": -0.1}],
    "sizes": [20, 40],
    "reference_size": 60,
    "pairs": [{"x": [0.3, 0.1], "y": [0.2, -0.2]}],
    "tolerance": 1e-8
  })");
  int rc = run_tool("toeplitz-verify --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 0);
  std::string report = slurp(dir / "report.json");
  CHECK(report.find("section-contraction-20-40") != std::string::npos);
  CHECK(report.find("false") == std::string::npos);
}

TEST_CASE("contour integration reaches tight tolerances on wide rectangles") {
  fs::path dir = scratch_root() / "scan_wide";
  fs::remove_all(dir);
  auto cfg = write_config(dir, R"({
    "s_rect": {"lo": [-0.5, -0.4], "hi": [0.9, 0.4]},
    "x": [0.3, 0.0],
    "y": [0.5, 0.1],
    "nodes_per_side": 1024,
    "contour_tolerance": 1e-8
  })");
  int rc = run_tool("continuation-scan --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir);
  CHECK(rc == 0);
}

TEST_CASE("help is not an error") {
  fs::path dir = scratch_root() / "help";
  CHECK(run_tool("--help", dir) == 0);
}
