#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "l1inf/bench.hpp"
#include "l1inf/matrix.hpp"
#include "l1inf/norms.hpp"

namespace testing {

using l1inf::DenseMatrix;
using l1inf::SplitMix64;

inline double uniform(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

inline std::size_t between(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.next() % (hi - lo + 1));
}

/// Entries uniform in [lo, hi).
inline DenseMatrix random_matrix(SplitMix64& rng, std::size_t n, std::size_t m, double lo = -1.0,
                                 double hi = 1.0) {
  std::vector<double> v(n * m);
  for (double& x : v) x = uniform(rng, lo, hi);
  return DenseMatrix::from_column_major(n, m, std::move(v));
}

/// Entries from {0, 0.1, ..., 1}, optionally with random signs. Grid values
/// produce ties and zero columns.
inline DenseMatrix grid_matrix(SplitMix64& rng, std::size_t n, std::size_t m, bool signs) {
  std::vector<double> v(n * m);
  for (double& x : v) {
    x = static_cast<double>(rng.next() % 11) / 10.0;
    if (signs && rng.next() % 2) x = -x;
  }
  return DenseMatrix::from_column_major(n, m, std::move(v));
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
  }
  return worst;
}

inline double column_abs_sum(const DenseMatrix& y, std::size_t j) {
  double s = 0.0;
  for (double v : y.column(j)) s += std::abs(v);
  return s;
}

}  // namespace testing
