#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace l1inf {

struct SimplexResult {
  std::vector<double> projected;  // max(v_i - tau, 0)
  double tau = 0.0;               // 0 when v is already inside the simplex
  std::size_t support_size = 0;   // strictly positive entries of `projected`
};

/// Euclidean projection of a nonnegative vector onto the solid simplex
/// {x >= 0 : sum(x) <= radius}, by sorting and scanning for the threshold.
///
/// Entries equal to the threshold map to exactly zero. Throws
/// std::invalid_argument on a negative entry or negative radius.
SimplexResult project_simplex(std::span<const double> v, double radius);

}  // namespace l1inf
