#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "l1inf/matrix.hpp"
#include "l1inf/projection.hpp"

namespace l1inf {

/// SplitMix64. The state advances by 0x9E3779B97F4A7C15 per draw and is
/// mixed as
///
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
///
/// with wrap-around 64-bit arithmetic. next_double() maps the top 53 bits to
/// [0, 1): (z >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// n x m matrix of i.i.d. uniform [0, 1) entries drawn from SplitMix64(seed)
/// in column-major order (column 0 top to bottom, then column 1, ...).
DenseMatrix gen_uniform_matrix(std::size_t n, std::size_t m, std::uint64_t seed);

struct Shape {
  std::size_t n = 0;
  std::size_t m = 0;
};

struct SweepConfig {
  std::vector<Shape> shapes;
  std::vector<double> radii;
  std::vector<Algorithm> algorithms{Algorithm::inverse_total_order};
  std::uint64_t seed = 1;
  std::size_t repetitions = 5;
  std::filesystem::path output;
  bool timing_strict = false;  // run cells one after another on a single thread
  bool verify = false;         // require every algorithm to report the same theta per cell
};

struct BenchRecord {
  std::string algo;
  std::size_t n = 0;
  std::size_t m = 0;
  double C = 0.0;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ns = 0;  // median over repetitions
  double entry_sparsity = 0.0;
  double column_sparsity = 0.0;
  double theta = 0.0;
  double J_fraction = 0.0;
  std::size_t repetitions = 0;

  bool operator==(const BenchRecord&) const = default;
};

/// Throws std::invalid_argument for an empty shape/radius/algorithm list, a
/// nonpositive radius, a zero dimension or zero repetitions.
void validate(const SweepConfig& cfg);

/// One record per (shape, radius, algorithm), radius-major within a shape.
/// In verify mode a theta disagreement above 1e-9 between algorithms on
/// the same cell throws std::runtime_error.
std::vector<BenchRecord> sweep_radius(const SweepConfig& cfg);

/// Same cells, ordered so the shape varies fastest for each radius.
std::vector<BenchRecord> sweep_size(const SweepConfig& cfg);

struct JPoint {
  double C = 0.0;
  double entry_sparsity = 0.0;
  double column_sparsity = 0.0;
  double J_fraction = 0.0;
};

/// Inverse-total-order runs on one uniform matrix, one point per radius.
std::vector<JPoint> measure_J(std::size_t n, std::size_t m, const std::vector<double>& radii,
                              std::uint64_t seed);

/// Radius list grammar: "lo:hi:log:count", "lo:hi:lin:count", or a
/// comma-separated list of values. Throws std::invalid_argument.
std::vector<double> parse_radii(std::string_view spec);

inline constexpr std::string_view kCsvHeader =
    "algo,n,m,C,seed,elapsed_ns,entry_sparsity,column_sparsity,theta,J_fraction,repetitions";
inline constexpr std::string_view kJCsvHeader = "C,entry_sparsity,column_sparsity,J_fraction";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);
/// Throws IoError naming the path.
void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

void write_j_csv(std::ostream& out, const std::vector<JPoint>& points);
void emit_j_csv(const std::vector<JPoint>& points, const std::filesystem::path& path);

}  // namespace l1inf
