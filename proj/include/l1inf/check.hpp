#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "l1inf/matrix.hpp"
#include "l1inf/projection.hpp"

namespace l1inf {

struct CheckConfig {
  std::size_t trials = 1000;
  std::size_t max_n = 8;  // at most 12
  std::size_t max_m = 8;  // at most 12
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

/// A projection under test. The default set wraps project_ball_l1inf for
/// each algorithm; tests substitute deliberately broken ones.
struct NamedProjection {
  std::string name;
  std::function<ProjectionOutput(const DenseMatrix&, double)> project;
};

std::vector<NamedProjection> default_projections();

struct CheckSummary {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t kkt_trials = 0;  // trials where the exhaustive solver also took part

  bool ok() const noexcept { return failed == 0; }
};

/// Randomised cross-validation. Each trial draws a shape up to
/// max_n x max_m, a matrix (either a 0.1-step grid in [0, 1] or uniform
/// [-1, 1), with random signs) and a radius in (0, 1.5 * norm_l1_inf],
/// then requires every projection to match the bisection reference entrywise
/// within tol and to account K + J = nm. Up to 6x6 the exhaustive KKT
/// solver must also agree with the reference. Failures are reported with
/// the matrix, the radius and each theta.
///
/// Throws std::invalid_argument when the limits are out of range.
CheckSummary run_check(const CheckConfig& cfg, const std::vector<NamedProjection>& projections,
                       std::ostream& report);

}  // namespace l1inf
