#include "l1inf/theta_state.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace l1inf {

ThetaState::ThetaState(std::size_t columns, double radius, std::size_t initial_count)
    : radius_(radius), sum_(columns, 0.0), count_(columns, initial_count), active_(columns, 0) {}

void ThetaState::add_term(std::size_t j) noexcept {
  const double k = static_cast<double>(count_[j]);
  num_ += sum_[j] / k;
  den_ += 1.0 / k;
}

void ThetaState::remove_term(std::size_t j) noexcept {
  const double k = static_cast<double>(count_[j]);
  num_ -= sum_[j] / k;
  den_ -= 1.0 / k;
}

void ThetaState::activate(std::size_t j, double sum, std::size_t count) {
  assert(!active_[j] && count > 0);
  sum_[j] = sum;
  count_[j] = count;
  active_[j] = 1;
  ++active_count_;
  add_term(j);
}

void ThetaState::deactivate(std::size_t j) {
  assert(active_[j]);
  remove_term(j);
  active_[j] = 0;
  if (--active_count_ == 0) {
    num_ = 0.0;
    den_ = 0.0;
  }
}

void ThetaState::grow(std::size_t j, double value) {
  assert(active_[j]);
  remove_term(j);
  sum_[j] += value;
  ++count_[j];
  add_term(j);
}

void ThetaState::shrink(std::size_t j, double value) {
  assert(active_[j] && count_[j] > 1);
  remove_term(j);
  sum_[j] -= value;
  --count_[j];
  add_term(j);
}

void ThetaState::reset_sum(std::size_t j, double sum) {
  assert(active_[j]);
  remove_term(j);
  sum_[j] = sum;
  add_term(j);
}

double ThetaState::update_theta() noexcept {
  theta_ = active_count_ == 0 ? kUndefined : (num_ - radius_) / den_;
  return theta_;
}

double ThetaState::recompute_accumulators() noexcept {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < sum_.size(); ++j) {
    if (!active_[j]) continue;
    const double k = static_cast<double>(count_[j]);
    num += sum_[j] / k;
    den += 1.0 / k;
  }
  const auto rel = [](double incremental, double exact) {
    return std::abs(incremental - exact) / std::max(std::abs(exact), 1e-300);
  };
  const double drift = active_count_ == 0 ? 0.0 : std::max(rel(num_, num), rel(den_, den));
  num_ = num;
  den_ = den;
  return drift;
}

}  // namespace l1inf
