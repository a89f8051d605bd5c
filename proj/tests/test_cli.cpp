#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "l1inf/bench.hpp"
#include "l1inf/cli.hpp"
#include "l1inf/matrix_io.hpp"
#include "support.hpp"

using namespace l1inf;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "l1inf_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

DenseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace

TEST_CASE("project: identity example to a file") {
  TempDir tmp;
  const auto in = tmp.file("id.txt", "2 2\n1 0\n0 1\n");
  const auto out_path = (tmp.path / "out.txt").string();
  const auto r = run({"project", in, "--radius", "1", "--output", out_path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read_matrix_file(out_path) == DenseMatrix::from_rows({{0.5, 0}, {0, 0.5}}));
}

TEST_CASE("project: inside the ball and zero radius") {
  TempDir tmp;
  const auto in = tmp.file("y.txt", "2 3\n0.1 -0.25 0.3\n0.123456789012345 0 -0.05\n");
  auto r = run({"project", in, "--radius", "10"});
  CHECK(r.code == 0);
  CHECK(parse(r.out) == read_matrix_file(in));
  r = run({"project", in, "--radius", "0", "--algo", "naive"});
  CHECK(r.code == 0);
  CHECK(parse(r.out) == DenseMatrix(2, 3));
}

TEST_CASE("project: stats go to stderr as key=value") {
  TempDir tmp;
  const auto in = tmp.file("id.txt", "2 2\n1 0\n0 1\n");
  const auto r = run({"project", in, "--radius", "1", "--stats"});
  CHECK(r.code == 0);
  for (const char* key : {"theta=0.5\n", "entry_sparsity=", "column_sparsity=", "\nJ=", "\nK=",
                          "elapsed_ns="}) {
    CHECK(r.err.find(key) != std::string::npos);
  }
  CHECK(r.out.find('=') == std::string::npos);
}

TEST_CASE("project: full precision output") {
  TempDir tmp;
  SplitMix64 rng(61);
  const auto y = testing::random_matrix(rng, 4, 6);
  std::ostringstream text;
  write_matrix(text, y);
  const auto in = tmp.file("y.txt", text.str());
  const auto r = run({"project", in, "--radius", "0.7"});
  REQUIRE(r.code == 0);
  CHECK(parse(r.out) == project_ball_l1inf(y, 0.7).X);
}

TEST_CASE("project: error exit codes") {
  TempDir tmp;
  const auto bad = tmp.file("bad.txt", "2 2\n1 0\n0 oops\n");
  auto r = run({"project", bad, "--radius", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"project", (tmp.path / "absent.txt").string(), "--radius", "1"}).code == 2);

  const auto good = tmp.file("id.txt", "2 2\n1 0\n0 1\n");
  CHECK(run({"project", good, "--radius", "-1"}).code == 3);
  CHECK(run({"project", good, "--radius", "abc"}).code == 3);
  CHECK(run({"project", good}).code == 3);
  CHECK(run({"project", good, "--radius", "1", "--algo", "fastest"}).code == 3);
  CHECK(run({"project", good, "--radius", "1", "--output",
             (tmp.path / "no" / "dir.txt").string()})
            .code == 4);
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bench: radius mode row count") {
  const auto r = run({"bench", "--mode", "radius", "--n", "30", "--m", "20", "--radii",
                      "1e-3:8:log:30", "--algo", "all", "--reps", "1"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto rows = read_csv(in);
  CHECK(rows.size() == 90);
}

TEST_CASE("bench: J mode writes the J table") {
  TempDir tmp;
  const auto path = (tmp.path / "j.csv").string();
  const auto r = run({"bench", "--mode", "J", "--n", "100", "--m", "100", "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == kJCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) rows += !line.empty();
  CHECK(rows == 30);
}

TEST_CASE("bench: deterministic payload across reruns") {
  const std::vector<std::string> args{"bench", "--mode",  "size", "--n", "10,20", "--m",
                                      "15",    "--radii", "0.5,2", "--algo", "all", "--reps",
                                      "1",     "--seed",  "5"};
  auto strip = [](const std::string& csv) {
    std::istringstream in(csv);
    auto rows = read_csv(in);
    for (auto& r : rows) r.elapsed_ns = 0;
    return rows;
  };
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(strip(a.out) == strip(b.out));
  CHECK(strip(a.out).size() == 2 * 2 * 3);
}

TEST_CASE("bench: config file, with command-line flags taking precedence") {
  TempDir tmp;
  const auto cfg = tmp.file("sweep.cfg",
                            "# sweep\nmode = radius\nn = 8\nm = 8\nradii = 0.1,1\n"
                            "algo = all\nreps = 1\nverify = true\ntiming-strict = false\n");
  auto r = run({"bench", "--config", cfg});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  CHECK(read_csv(in).size() == 6);
  r = run({"bench", "--config", cfg, "--algo", "naive"});
  REQUIRE(r.code == 0);
  std::istringstream in2(r.out);
  CHECK(read_csv(in2).size() == 2);
  const auto broken = tmp.file("broken.cfg", "mode radius\n");
  CHECK(run({"bench", "--config", broken}).code == 3);
  CHECK(run({"bench", "--config", (tmp.path / "none.cfg").string()}).code == 3);
}

TEST_CASE("bench: invalid flags and output failures") {
  CHECK(run({"bench", "--mode", "weird"}).code == 3);
  CHECK(run({"bench", "--radii", "0:1:log:3"}).code == 3);
  CHECK(run({"bench", "--n", "4", "--m", "4", "--reps", "0"}).code == 3);
  CHECK(run({"bench", "--n", "4", "--m", "4", "--algo", "nope"}).code == 3);
  CHECK(run({"bench", "--mode", "J", "--n", "4,5", "--m", "4"}).code == 3);
  CHECK(run({"bench", "--n", "4", "--m", "4", "--radii", "1", "--out", "/nonexistent/dir/x.csv"})
            .code == 4);
}

TEST_CASE("check: certification run and scalar case") {
  auto r = run({"check", "--trials", "1000", "--max-n", "8", "--max-m", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("passed=1000 failed=0") != std::string::npos);
  r = run({"check", "--trials", "1", "--max-n", "1", "--max-m", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("passed=1 failed=0") != std::string::npos);
  CHECK(run({"check", "--max-n", "13"}).code == 3);
  CHECK(run({"check", "--tol", "-1"}).code == 3);
}

TEST_CASE("check: a tampered projection is caught") {
  auto projections = default_projections();
  projections.push_back({"tampered", [](const DenseMatrix& y, double radius) {
                           auto out = project_ball_l1inf(y, radius);
                           out.X.values()[0] += 1e-6;
                           return out;
                         }});
  CheckConfig cfg;
  cfg.trials = 20;
  std::ostringstream out, err;
  CHECK(cmd_check(cfg, projections, out, err) == kExitMismatch);
  const std::string report = out.str();
  CHECK(report.find("tampered differs") != std::string::npos);
  CHECK(report.find("theta:") != std::string::npos);
  CHECK(report.find("matrix:") != std::string::npos);
  CHECK(report.find(" C=") != std::string::npos);
  CHECK(report.find("failed=20") != std::string::npos);
}

TEST_CASE("check: broken accounting is caught") {
  std::vector<NamedProjection> projections{{"miscount", [](const DenseMatrix& y, double radius) {
                                              auto out = project_ball_l1inf(y, radius);
                                              out.stats.J += 1;
                                              return out;
                                            }}};
  CheckConfig cfg;
  cfg.trials = 5;
  std::ostringstream out, err;
  CHECK(cmd_check(cfg, projections, out, err) == kExitMismatch);
  CHECK(out.str().find("K+J") != std::string::npos);
}
