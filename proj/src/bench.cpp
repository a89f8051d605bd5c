#include "l1inf/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "l1inf/matrix_io.hpp"
#include "l1inf/norms.hpp"

namespace l1inf {

namespace {

struct Cell {
  std::size_t shape;
  double radius;
  Algorithm algo;
};

std::int64_t median(std::vector<std::int64_t> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
}

BenchRecord run_cell(const DenseMatrix& y, const Cell& cell, const SweepConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  ProjectionOutput out = project_ball_l1inf(y, cell.radius, cell.algo);  // warm-up
  std::vector<std::int64_t> samples;
  samples.reserve(cfg.repetitions);
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const auto start = Clock::now();
    out = project_ball_l1inf(y, cell.radius, cell.algo);
    samples.push_back(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
  }
  const SparsityReport sparsity = sparsity_report(out.X);
  BenchRecord rec;
  rec.algo = std::string(to_string(cell.algo));
  rec.n = y.rows();
  rec.m = y.cols();
  rec.C = cell.radius;
  rec.seed = cfg.seed;
  rec.elapsed_ns = median(std::move(samples));
  rec.entry_sparsity = sparsity.entry_sparsity;
  rec.column_sparsity = sparsity.column_sparsity;
  rec.theta = out.theta;
  rec.J_fraction = static_cast<double>(out.stats.J) / static_cast<double>(y.size());
  rec.repetitions = cfg.repetitions;
  return rec;
}

std::vector<BenchRecord> run_cells(const SweepConfig& cfg, const std::vector<Cell>& cells) {
  validate(cfg);
  std::vector<DenseMatrix> inputs;
  inputs.reserve(cfg.shapes.size());
  for (const Shape& s : cfg.shapes) inputs.push_back(gen_uniform_matrix(s.n, s.m, cfg.seed));

  std::vector<BenchRecord> records(cells.size());
  std::exception_ptr failure;
  const long count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic) if (!cfg.timing_strict)
  for (long c = 0; c < count; ++c) {
    try {
      const Cell& cell = cells[static_cast<std::size_t>(c)];
      records[static_cast<std::size_t>(c)] = run_cell(inputs[cell.shape], cell, cfg);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  if (cfg.verify) {
    // Cells of one (shape, radius) are adjacent: algorithms vary fastest.
    const std::size_t stride = cfg.algorithms.size();
    for (std::size_t base = 0; base < records.size(); base += stride) {
      for (std::size_t a = 1; a < stride; ++a) {
        const BenchRecord& ref = records[base];
        const BenchRecord& other = records[base + a];
        if (std::abs(ref.theta - other.theta) > 1e-9) {
          throw std::runtime_error("theta mismatch at " + std::to_string(ref.n) + "x" +
                                   std::to_string(ref.m) + " C=" + format_real(ref.C) + ": " +
                                   ref.algo + "=" + format_real(ref.theta) + " " + other.algo +
                                   "=" + format_real(other.theta));
        }
      }
    }
  }
  return records;
}

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

template <typename T>
T parse_integer(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

}  // namespace

DenseMatrix gen_uniform_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> values(n * m);
  for (double& v : values) v = rng.next_double();
  return DenseMatrix::from_column_major(n, m, std::move(values));
}

void validate(const SweepConfig& cfg) {
  if (cfg.shapes.empty()) throw std::invalid_argument("sweep needs at least one shape");
  if (cfg.radii.empty()) throw std::invalid_argument("sweep needs at least one radius");
  if (cfg.algorithms.empty()) throw std::invalid_argument("sweep needs at least one algorithm");
  if (cfg.repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  for (const Shape& s : cfg.shapes) {
    if (s.n == 0 || s.m == 0) throw std::invalid_argument("matrix dimensions must be positive");
  }
  for (double r : cfg.radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radii must be positive");
  }
}

std::vector<BenchRecord> sweep_radius(const SweepConfig& cfg) {
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < cfg.shapes.size(); ++s) {
    for (double r : cfg.radii) {
      for (Algorithm a : cfg.algorithms) cells.push_back({s, r, a});
    }
  }
  return run_cells(cfg, cells);
}

std::vector<BenchRecord> sweep_size(const SweepConfig& cfg) {
  std::vector<Cell> cells;
  for (double r : cfg.radii) {
    for (std::size_t s = 0; s < cfg.shapes.size(); ++s) {
      for (Algorithm a : cfg.algorithms) cells.push_back({s, r, a});
    }
  }
  return run_cells(cfg, cells);
}

std::vector<JPoint> measure_J(std::size_t n, std::size_t m, const std::vector<double>& radii,
                              std::uint64_t seed) {
  const DenseMatrix y = gen_uniform_matrix(n, m, seed);
  std::vector<JPoint> points;
  points.reserve(radii.size());
  for (double r : radii) {
    const ProjectionOutput out = project_ball_l1inf(y, r, Algorithm::inverse_total_order);
    const SparsityReport sparsity = sparsity_report(out.X);
    points.push_back({r, sparsity.entry_sparsity, sparsity.column_sparsity,
                      static_cast<double>(out.stats.J) / static_cast<double>(y.size())});
  }
  return points;
}

std::vector<double> parse_radii(std::string_view spec) {
  const auto parts = split(spec, ':');
  std::vector<double> radii;
  if (parts.size() == 1) {
    for (std::string_view item : split(spec, ',')) radii.push_back(parse_real(item, "radius"));
  } else if (parts.size() == 4) {
    const double lo = parse_real(parts[0], "range start");
    const double hi = parse_real(parts[1], "range end");
    const auto count = parse_integer<std::size_t>(parts[3], "range count");
    if (count == 0) throw std::invalid_argument("range count must be >= 1");
    if (parts[2] != "log" && parts[2] != "lin") {
      throw std::invalid_argument("range spacing must be 'log' or 'lin'");
    }
    const bool log = parts[2] == "log";
    if (log && !(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("log range needs positive ends");
    for (std::size_t k = 0; k < count; ++k) {
      const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
      radii.push_back(log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                          : lo + t * (hi - lo));
    }
    // exp(log(x)) may be off by an ulp; keep the ends exact.
    radii.front() = lo;
    if (count > 1) radii.back() = hi;
  } else {
    throw std::invalid_argument("radius spec must be 'lo:hi:log|lin:count' or a list");
  }
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
  }
  return radii;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.algo << ',' << r.n << ',' << r.m << ',' << format_real(r.C) << ',' << r.seed << ','
        << r.elapsed_ns << ',' << format_real(r.entry_sparsity) << ','
        << format_real(r.column_sparsity) << ',' << format_real(r.theta) << ','
        << format_real(r.J_fraction) << ',' << r.repetitions << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("missing or unexpected CSV header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) throw std::invalid_argument("CSV row needs 11 fields: " + line);
    BenchRecord r;
    r.algo = std::string(f[0]);
    r.n = parse_integer<std::size_t>(f[1], "n");
    r.m = parse_integer<std::size_t>(f[2], "m");
    r.C = parse_real(f[3], "C");
    r.seed = parse_integer<std::uint64_t>(f[4], "seed");
    r.elapsed_ns = parse_integer<std::int64_t>(f[5], "elapsed_ns");
    r.entry_sparsity = parse_real(f[6], "entry_sparsity");
    r.column_sparsity = parse_real(f[7], "column_sparsity");
    r.theta = parse_real(f[8], "theta");
    r.J_fraction = parse_real(f[9], "J_fraction");
    r.repetitions = parse_integer<std::size_t>(f[10], "repetitions");
    records.push_back(std::move(r));
  }
  return records;
}

void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(out, records);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void write_j_csv(std::ostream& out, const std::vector<JPoint>& points) {
  out << kJCsvHeader << '\n';
  for (const JPoint& p : points) {
    out << format_real(p.C) << ',' << format_real(p.entry_sparsity) << ','
        << format_real(p.column_sparsity) << ',' << format_real(p.J_fraction) << '\n';
  }
}

void emit_j_csv(const std::vector<JPoint>& points, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_j_csv(out, points);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace l1inf
