#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "l1inf/matrix.hpp"
#include "l1inf/theta_state.hpp"

namespace l1inf {

enum class Algorithm {
  naive,                // repeated per-column simplex projections until the supports settle
  total_order,          // sort every breakpoint, then scan forward
  inverse_total_order,  // lazy per-column heaps, scan backward from the end of the order
};

inline constexpr std::array<Algorithm, 3> kAllAlgorithms{
    Algorithm::naive, Algorithm::total_order, Algorithm::inverse_total_order};

std::string_view to_string(Algorithm algo) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// Work accounting. Every column of an n x m input owns n breakpoints
/// (n-1 selection growths and one deactivation), nm in total. K counts the
/// breakpoints accepted in the final state, J = nm - K those that are not.
/// The inverse-total-order scan visits only the J trailing ones.
struct WorkStats {
  std::size_t K = 0;
  std::size_t J = 0;
  std::size_t heap_pops = 0;
  std::size_t outer_iterations = 0;
  std::chrono::nanoseconds elapsed{0};
  double accumulator_drift = 0.0;  // max relative gap, incremental vs recomputed num/den
};

struct ProjectionOptions {
  bool trace_theta = false;          // record theta after every state transition
  bool verify_accumulators = false;  // compare num/den against a full recompute after every transition
};

struct ProjectionOutput {
  DenseMatrix X;
  double theta = 0.0;
  std::vector<double> mu;              // column caps; zero for zeroed columns
  std::vector<unsigned char> active;   // 1 iff mu_j > 0
  WorkStats stats;
  std::vector<double> theta_trace;     // filled when ProjectionOptions::trace_theta
};

/// Euclidean projection of Y onto {X : norm_l1_inf(X) <= C}.
///
/// Inputs already inside the ball come back unchanged with theta = 0 and
/// every column active; C = 0 yields the zero matrix with every column
/// inactive. Otherwise Y is split into signs and magnitudes, the magnitudes
/// are projected with `algo` and the signs reapplied. Throws
/// std::invalid_argument for a negative or non-finite radius.
ProjectionOutput project_ball_l1inf(const DenseMatrix& y, double radius,
                                    Algorithm algo = Algorithm::inverse_total_order,
                                    const ProjectionOptions& options = {});

// The three routines below require a nonnegative matrix strictly outside
// the ball (norm_l1_inf(y) > radius > 0) and throw std::invalid_argument
// otherwise.

ProjectionOutput naive_projection(const DenseMatrix& y, double radius,
                                  const ProjectionOptions& options = {});
ProjectionOutput total_order_projection(const DenseMatrix& y, double radius,
                                        const ProjectionOptions& options = {});
ProjectionOutput inverse_total_order_projection(const DenseMatrix& y, double radius,
                                                const ProjectionOptions& options = {});

ProjectionOutput project_nonnegative(const DenseMatrix& y, double radius, Algorithm algo,
                                     const ProjectionOptions& options = {});

/// Builds the projected matrix from a converged state: mu_j = max(0,
/// (S_j - theta)/k_j) for active columns, 0 otherwise, and X = min(Y, mu).
ProjectionOutput recover_solution(const DenseMatrix& y, double theta, const ThetaState& state);

/// Proximity operator of radius * norm_linf_l1, computed as Y - P(Y).
/// Throws std::invalid_argument unless radius > 0.
DenseMatrix prox_linf_l1(const DenseMatrix& y, double radius,
                         Algorithm algo = Algorithm::inverse_total_order);

}  // namespace l1inf
