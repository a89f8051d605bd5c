#pragma once

#include <cstddef>

#include "l1inf/matrix.hpp"

namespace l1inf {

/// Reference solution produced independently of the projection algorithms.
struct OracleResult {
  DenseMatrix X;
  double theta = 0.0;
  double residual = 0.0;  // |sum_j mu_j(theta) - C| at the reported theta
  std::size_t iterations = 0;
};

/// g(theta) = sum_j mu_j(theta), mu_j(theta) being the simplex threshold of
/// column j at radius theta (0 once the column sum is <= theta).
/// Continuous and nonincreasing.
double cap_total(const DenseMatrix& y, double theta);

/// Solves g(theta) = C by bisection on [0, largest column sum], then maps
/// each column to y_j - P(y_j) with P the simplex projection at radius
/// theta. Requires a nonnegative input with norm_l1_inf(y) > C > 0 and
/// tol > 0; throws std::invalid_argument otherwise.
OracleResult theta_by_bisection(const DenseMatrix& y, double radius, double tol = 1e-12);

/// Exhaustive solver for tiny inputs (at most 6x6): tries every
/// combination of per-column states (zeroed, or the top-k entries capped),
/// keeps those satisfying the optimality conditions and returns the one
/// closest to y. Throws std::length_error above 6x6.
OracleResult project_small_kkt(const DenseMatrix& y, double radius);

/// Signed-input reference built on theta_by_bisection, with the same
/// inside-the-ball and zero-radius conventions as project_ball_l1inf.
DenseMatrix oracle_project_ball(const DenseMatrix& y, double radius, double tol = 1e-12);

}  // namespace l1inf
