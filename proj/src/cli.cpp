#include "l1inf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "l1inf/bench.hpp"
#include "l1inf/matrix_io.hpp"
#include "l1inf/norms.hpp"
#include "l1inf/projection.hpp"

namespace l1inf {

namespace {

constexpr const char* kRadiiHelp =
    "radius list: 'lo:hi:log:count', 'lo:hi:lin:count' or comma-separated values";

struct BadFlags : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Splices a key=value config file into the argument list. Flags given on
// the command line win; boolean keys take true/false.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "--config" || a.rfind("--config=", 0) == 0;
  });
  if (it == args.end()) return args;
  std::string path;
  if (*it == "--config") {
    if (it + 1 == args.end()) throw BadFlags("--config needs a path");
    path = *(it + 1);
    args.erase(it, it + 2);
  } else {
    path = it->substr(9);
    args.erase(it);
  }
  std::ifstream in(path);
  if (!in) throw BadFlags("cannot read config file '" + path + "'");
  std::vector<std::string> extra;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadFlags(path + ":" + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (given(args, key)) continue;
    if (value == "true") {
      extra.push_back(key);
    } else if (value != "false") {
      extra.push_back(key);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::vector<Algorithm> parse_algorithms(const std::string& spec) {
  if (spec == "all") return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto end = std::min(spec.find(',', start), spec.size());
    const std::string name = spec.substr(start, end - start);
    const auto algo = parse_algorithm(name);
    if (!algo) throw BadFlags("unknown algorithm '" + name + "'");
    out.push_back(*algo);
    start = end + 1;
  }
  return out;
}

struct ProjectArgs {
  std::string input;
  double radius = -1.0;
  std::string algo = "inverse_total_order";
  std::string output;
  bool stats = false;
};

struct BenchArgs {
  std::string mode = "radius";
  std::vector<std::size_t> n;
  std::vector<std::size_t> m;
  std::string radii;
  std::string algo = "inverse_total_order";
  std::uint64_t seed = 1;
  std::size_t reps = 5;
  std::string out;
  bool timing_strict = false;
  bool verify = false;
};

int run_project(const ProjectArgs& a, std::ostream& out, std::ostream& err) {
  const auto algo = parse_algorithm(a.algo);
  if (!algo) throw BadFlags("unknown algorithm '" + a.algo + "'");
  if (!(a.radius >= 0.0) || !std::isfinite(a.radius)) {
    throw BadFlags("--radius must be a finite value >= 0");
  }
  DenseMatrix y = [&] {
    try {
      return read_matrix_file(a.input);
    } catch (const IoError& e) {
      throw ParseError(0, e.what());
    }
  }();
  const ProjectionOutput result = project_ball_l1inf(y, a.radius, *algo);
  if (a.output.empty()) {
    write_matrix(out, result.X);
    if (!out) throw IoError("write to standard output failed");
  } else {
    write_matrix_file(a.output, result.X);
  }
  if (a.stats) {
    const SparsityReport s = sparsity_report(result.X);
    err << "theta=" << format_real(result.theta) << '\n'
        << "entry_sparsity=" << format_real(s.entry_sparsity) << '\n'
        << "column_sparsity=" << format_real(s.column_sparsity) << '\n'
        << "J=" << result.stats.J << '\n'
        << "K=" << result.stats.K << '\n'
        << "elapsed_ns=" << result.stats.elapsed.count() << '\n';
  }
  return kExitOk;
}

template <typename Writer>
void write_output(const std::string& path, std::ostream& out, Writer&& writer) {
  if (path.empty()) {
    writer(out);
    out.flush();
    if (!out) throw IoError("write to standard output failed");
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

int run_bench(const BenchArgs& a, std::ostream& out) {
  const std::vector<double> radii = [&] {
    try {
      if (!a.radii.empty()) return parse_radii(a.radii);
      return parse_radii(a.mode == "size" ? "1" : "1e-3:8:log:30");
    } catch (const std::invalid_argument& e) {
      throw BadFlags(e.what());
    }
  }();
  const std::size_t default_side = a.mode == "J" ? 500 : 1000;
  const std::vector<std::size_t> ns = a.n.empty() ? std::vector<std::size_t>{default_side} : a.n;
  const std::vector<std::size_t> ms = a.m.empty() ? std::vector<std::size_t>{default_side} : a.m;

  if (a.mode == "J") {
    if (ns.size() != 1 || ms.size() != 1) throw BadFlags("--mode J takes a single --n and --m");
    if (ns[0] == 0 || ms[0] == 0) throw BadFlags("matrix dimensions must be positive");
    const auto points = measure_J(ns[0], ms[0], radii, a.seed);
    write_output(a.out, out, [&](std::ostream& o) { write_j_csv(o, points); });
    return kExitOk;
  }

  SweepConfig cfg;
  for (std::size_t n : ns) {
    for (std::size_t m : ms) cfg.shapes.push_back({n, m});
  }
  cfg.radii = radii;
  cfg.algorithms = parse_algorithms(a.algo);
  cfg.seed = a.seed;
  cfg.repetitions = a.reps;
  cfg.output = a.out;
  cfg.timing_strict = a.timing_strict;
  cfg.verify = a.verify;
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw BadFlags(e.what());
  }
  const auto records = a.mode == "size" ? sweep_size(cfg) : sweep_radius(cfg);
  write_output(a.out, out, [&](std::ostream& o) { write_csv(o, records); });
  return kExitOk;
}

}  // namespace

int cmd_check(const CheckConfig& cfg, const std::vector<NamedProjection>& projections,
              std::ostream& out, std::ostream& err) {
  CheckSummary summary;
  try {
    summary = run_check(cfg, projections, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  }
  return summary.ok() ? kExitOk : kExitMismatch;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection onto the l1,inf norm ball"};
  app.require_subcommand(1);

  ProjectArgs pa;
  auto* project = app.add_subcommand("project", "project a matrix file onto the ball");
  project->add_option("input", pa.input, "matrix file: 'n m' header then n rows of m reals")
      ->required();
  project->add_option("--radius", pa.radius, "ball radius C >= 0")->required();
  project->add_option("--algo", pa.algo, "naive | total_order | inverse_total_order");
  project->add_option("--output", pa.output, "output path (default: standard output)");
  project->add_flag("--stats", pa.stats, "print theta, sparsity, J, K and elapsed_ns to stderr");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "benchmark sweeps writing CSV");
  bench->add_option("--mode", ba.mode, "radius | size | J")
      ->check(CLI::IsMember({"radius", "size", "J"}));
  bench->add_option("--n", ba.n, "row counts (comma-separated)")->delimiter(',');
  bench->add_option("--m", ba.m, "column counts (comma-separated)")->delimiter(',');
  bench->add_option("--radii", ba.radii, kRadiiHelp);
  bench->add_option("--algo", ba.algo, "algorithm name, comma list or 'all'");
  bench->add_option("--seed", ba.seed, "generator seed");
  bench->add_option("--reps", ba.reps, "timed repetitions per cell (median is reported)");
  bench->add_option("--out", ba.out, "CSV path (default: standard output)");
  bench->add_flag("--timing-strict", ba.timing_strict, "run cells sequentially on one thread");
  bench->add_flag("--verify", ba.verify, "require identical theta across algorithms per cell");
  // Handled before parsing; registered so it shows up in --help.
  std::string config_path;
  bench->add_option("--config", config_path, "key=value file with any of the flags above");

  CheckConfig ca;
  auto* check = app.add_subcommand("check", "randomised cross-validation against the oracles");
  check->add_option("--trials", ca.trials, "number of random instances");
  check->add_option("--max-n", ca.max_n, "largest row count (<= 12)");
  check->add_option("--max-m", ca.max_m, "largest column count (<= 12)");
  check->add_option("--seed", ca.seed, "generator seed");
  check->add_option("--tol", ca.tol, "entrywise tolerance");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (project->parsed()) return run_project(pa, out, err);
    if (bench->parsed()) return run_bench(ba, out);
    return cmd_check(ca, default_projections(), out, err);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const BadFlags& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  }
}

}  // namespace l1inf
