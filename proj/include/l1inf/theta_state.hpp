#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace l1inf {

/// Per-column selection state shared by the projection algorithms, plus the
/// two running accumulators behind the threshold estimate
///
///   theta = (sum_j a_j S_j / k_j - C) / (sum_j a_j / k_j).
///
/// For an active column, k_j is the number of its largest entries that are
/// capped and S_j their sum. Accumulators are maintained incrementally by
/// the four transitions; recompute_accumulators() rebuilds them exactly.
class ThetaState {
 public:
  /// All columns start inactive with count `initial_count`.
  ThetaState(std::size_t columns, double radius, std::size_t initial_count = 1);

  void activate(std::size_t j, double sum, std::size_t count);
  void deactivate(std::size_t j);
  /// Adds `value` to the selection of active column j (k_j + 1).
  void grow(std::size_t j, double value);
  /// Removes `value` from the selection of active column j (k_j - 1).
  void shrink(std::size_t j, double value);
  /// Overwrites S_j of an active column, e.g. with an exactly re-summed value.
  void reset_sum(std::size_t j, double sum);

  /// Stores and returns (num - C)/den. With no active column the estimate is
  /// undefined and -infinity is returned.
  double update_theta() noexcept;

  /// Rebuilds num/den from (S, k, a). Returns the largest relative
  /// difference between the incremental and recomputed accumulators.
  double recompute_accumulators() noexcept;

  std::size_t columns() const noexcept { return sum_.size(); }
  double radius() const noexcept { return radius_; }
  double sum(std::size_t j) const noexcept { return sum_[j]; }
  std::size_t count(std::size_t j) const noexcept { return count_[j]; }
  bool active(std::size_t j) const noexcept { return active_[j] != 0; }
  std::size_t active_columns() const noexcept { return active_count_; }
  double numerator() const noexcept { return num_; }
  double denominator() const noexcept { return den_; }
  double theta() const noexcept { return theta_; }

  static constexpr double kUndefined = -std::numeric_limits<double>::infinity();

 private:
  void add_term(std::size_t j) noexcept;
  void remove_term(std::size_t j) noexcept;

  double radius_;
  std::vector<double> sum_;
  std::vector<std::size_t> count_;
  std::vector<unsigned char> active_;
  std::size_t active_count_ = 0;
  double num_ = 0.0;
  double den_ = 0.0;
  double theta_ = kUndefined;
};

}  // namespace l1inf
