#include "l1inf/projection.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "l1inf/column_queue.hpp"
#include "l1inf/norms.hpp"
#include "l1inf/simplex.hpp"

namespace l1inf {

namespace {

using Clock = std::chrono::steady_clock;

// Rounding can leave a misclassified breakpoint sitting within an ulp of
// theta; after this many passes the remaining moves cannot change X
// beyond rounding.
constexpr std::size_t kMaxPasses = 4;

class Tracer {
 public:
  Tracer(const ProjectionOptions& options, std::vector<double>& trace, const ThetaState& state)
      : options_(options), trace_(trace), state_(state) {}

  void record(double& drift) {
    if (options_.trace_theta) trace_.push_back(state_.theta());
    if (options_.verify_accumulators && state_.active_columns() > 0) {
      ThetaState copy = state_;
      drift = std::max(drift, copy.recompute_accumulators());
    }
  }

 private:
  const ProjectionOptions& options_;
  std::vector<double>& trace_;
  const ThetaState& state_;
};

void require_projectable(const DenseMatrix& y, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("radius must be positive and finite");
  }
  const auto values = y.values();
  if (std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0; })) {
    throw std::invalid_argument("input must be nonnegative");
  }
  if (!(norm_l1_inf(y) > radius)) {
    throw std::invalid_argument("input already lies inside the ball");
  }
}

std::vector<double> column_sums(const DenseMatrix& y) {
  std::vector<double> sums(y.cols());
  for (std::size_t j = 0; j < y.cols(); ++j) {
    const auto col = y.column(j);
    sums[j] = std::accumulate(col.begin(), col.end(), 0.0);
  }
  return sums;
}

ProjectionOutput run_naive(const DenseMatrix& y, double radius, const ProjectionOptions& options) {
  const std::size_t m = y.cols();
  const std::vector<double> sums = column_sums(y);

  ThetaState state(m, radius);
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = y.column(j);
    state.activate(j, *std::max_element(col.begin(), col.end()), 1);
  }
  state.update_theta();

  std::vector<double> trace;
  WorkStats stats;
  Tracer tracer(options, trace, state);
  tracer.record(stats.accumulator_drift);

  while (true) {
    ++stats.outer_iterations;
    bool changed = false;
    const double theta = state.theta();
    // Only reachable when the norm exceeds the radius by rounding: the
    // top entries already form the answer.
    if (!(theta > 0.0)) break;
    for (std::size_t j = 0; j < m; ++j) {
      if (!state.active(j)) continue;
      if (sums[j] < theta) {
        state.deactivate(j);
        changed = true;
        continue;
      }
      const auto col = y.column(j);
      // Entries equal to the threshold leave the cap unchanged whether
      // selected or not; selecting them survives tau rounding onto a tie.
      const double tau = project_simplex(col, theta).tau;
      double selected = 0.0;
      std::size_t count = 0;
      for (double v : col) {
        if (v < tau) continue;
        selected += v;
        ++count;
      }
      if (count != state.count(j)) changed = true;
      state.deactivate(j);
      state.activate(j, selected, count);
    }
    if (state.active_columns() > 0) {
      stats.accumulator_drift = std::max(stats.accumulator_drift, state.recompute_accumulators());
    }
    state.update_theta();
    tracer.record(stats.accumulator_drift);
    if (!changed) break;
  }

  ProjectionOutput out = recover_solution(y, state.theta(), state);
  out.stats.outer_iterations = stats.outer_iterations;
  out.stats.accumulator_drift = stats.accumulator_drift;
  out.theta_trace = std::move(trace);
  return out;
}

ProjectionOutput run_total_order(const DenseMatrix& y, double radius,
                                 const ProjectionOptions& options) {
  const std::size_t n = y.rows();
  const std::size_t m = y.cols();

  // Columns sorted in decreasing order and their running sums.
  std::vector<double> sorted(y.values().begin(), y.values().end());
  std::vector<double> prefix(n * m);
  for (std::size_t j = 0; j < m; ++j) {
    auto first = sorted.begin() + static_cast<std::ptrdiff_t>(j * n);
    std::sort(first, first + static_cast<std::ptrdiff_t>(n), std::greater<>());
    std::partial_sum(first, first + static_cast<std::ptrdiff_t>(n),
                     prefix.begin() + static_cast<std::ptrdiff_t>(j * n));
  }

  // Breakpoint (k, j) with k < n: theta above S_k - k*Z_{k+1} makes the
  // (k+1)-th largest entry of column j join the capped set. Breakpoint
  // (n, j) is the column sum, above which the column is zeroed.
  struct Breakpoint {
    double value;
    std::uint32_t k;
    std::uint32_t column;
  };
  std::vector<Breakpoint> order;
  order.reserve(n * m);
  for (std::size_t j = 0; j < m; ++j) {
    const double* z = sorted.data() + j * n;
    const double* s = prefix.data() + j * n;
    double floor = 0.0;  // keeps each column's breakpoints nondecreasing under rounding
    for (std::size_t k = 1; k <= n; ++k) {
      const double b = k < n ? s[k - 1] - static_cast<double>(k) * z[k] : s[n - 1];
      floor = std::max(floor, b);
      order.push_back({floor, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(order.begin(), order.end(), [](const Breakpoint& a, const Breakpoint& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.k != b.k) return a.k < b.k;
    return a.column < b.column;
  });

  ThetaState state(m, radius);
  for (std::size_t j = 0; j < m; ++j) state.activate(j, sorted[j * n], 1);
  state.update_theta();

  std::vector<double> trace;
  WorkStats stats;
  Tracer tracer(options, trace, state);
  tracer.record(stats.accumulator_drift);

  std::size_t next = 0;
  for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
    ++stats.outer_iterations;
    const std::size_t before = next;
    while (next < order.size() && order[next].value < state.theta()) {
      const Breakpoint& bp = order[next++];
      assert(state.active(bp.column) && state.count(bp.column) == bp.k);
      if (bp.k < n) {
        state.grow(bp.column, sorted[bp.column * n + bp.k]);
      } else {
        state.deactivate(bp.column);
      }
      state.update_theta();
      tracer.record(stats.accumulator_drift);
    }
    // Exact sums from the prefix table, then re-check the stopping point
    // against the rebuilt estimate.
    for (std::size_t j = 0; j < m; ++j) {
      if (state.active(j)) state.reset_sum(j, prefix[j * n + state.count(j) - 1]);
    }
    if (state.active_columns() > 0) {
      stats.accumulator_drift = std::max(stats.accumulator_drift, state.recompute_accumulators());
    }
    state.update_theta();
    if (next == before || next == order.size() || !(order[next].value < state.theta())) break;
  }

  ProjectionOutput out = recover_solution(y, state.theta(), state);
  out.stats.outer_iterations = stats.outer_iterations;
  out.stats.accumulator_drift = stats.accumulator_drift;
  out.theta_trace = std::move(trace);
  return out;
}

// Walks the breakpoint order from its end. State p (the first p breakpoints
// accepted) is the answer iff its last breakpoint b_p satisfies
// b_p < theta_p, and the scan only ever needs the largest remaining
// breakpoint: the global queue holds one key per column, namely the next
// breakpoint that column would give back.
class InverseTotalOrder {
 public:
  InverseTotalOrder(const DenseMatrix& y, double radius, const ProjectionOptions& options)
      : y_(y),
        n_(y.rows()),
        m_(y.cols()),
        sums_(column_sums(y)),
        state_(m_, radius, n_ + 1),
        queue_(m_),
        buffer_of_(m_, kNoBuffer),
        tracer_(options, trace_, state_) {}

  ProjectionOutput run() {
    queue_.assign(sums_);
    for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
      ++stats_.outer_iterations;
      walk_backward();
      refresh();
      bool changed = false;
      while (redo_last()) changed = true;
      if (!changed) break;
      refresh();
    }
    assert(state_.theta() >= -1e-9 * std::max(1.0, std::abs(state_.theta())));

    ProjectionOutput out = recover_solution(y_, state_.theta(), state_);
    out.stats.heap_pops = stats_.heap_pops;
    out.stats.outer_iterations = stats_.outer_iterations;
    out.stats.accumulator_drift = stats_.accumulator_drift;
    out.theta_trace = std::move(trace_);
    return out;
  }

 private:
  static constexpr std::size_t kNoBuffer = static_cast<std::size_t>(-1);

  // Column j's copy lives in pool_[buffer_of_[j] .. + n). The first k_j slots
  // form a min-heap of the capped entries; slot k_j onward holds the entries
  // given back so far, slot k_j being the most recent (largest) one.
  double* heap_of(std::size_t j) { return pool_.get() + buffer_of_[j]; }

  void build_heap(std::size_t j) {
    if (!pool_) pool_.reset(new double[n_ * m_]);
    buffer_of_[j] = next_buffer_;
    next_buffer_ += n_;
    double* h = heap_of(j);
    const auto col = y_.column(j);
    std::copy(col.begin(), col.end(), h);
    std::make_heap(h, h + n_, std::greater<>());
  }

  // Next breakpoint column j would give back, or nothing once only its
  // largest entry is capped.
  void requeue(std::size_t j, double previous_key) {
    if (state_.active(j) && state_.count(j) < 2) {
      if (queue_.contains(j)) queue_.erase(j);
      return;
    }
    double key = sums_[j];
    if (state_.active(j)) {
      key = state_.sum(j) - static_cast<double>(state_.count(j)) * heap_of(j)[0];
    }
    queue_.set(j, std::min(key, previous_key));
  }

  void walk_backward() {
    while (!queue_.empty()) {
      const std::size_t j = queue_.top();
      const double key = queue_.top_key();
      if (state_.active_columns() > 0 && key < state_.theta()) return;

      if (!state_.active(j)) {
        if (buffer_of_[j] == kNoBuffer) build_heap(j);
        state_.activate(j, sums_[j], n_);
      } else {
        double* h = heap_of(j);
        const std::size_t k = state_.count(j);
        std::pop_heap(h, h + k, std::greater<>());
        state_.shrink(j, h[k - 1]);
      }
      ++stats_.heap_pops;
      history_.push_back(j);
      state_.update_theta();
      tracer_.record(stats_.accumulator_drift);
      requeue(j, key);
    }
  }

  // Re-accepts the most recently given-back breakpoint if the current
  // estimate says it belongs to the solution.
  bool redo_last() {
    if (history_.empty()) return false;
    const std::size_t j = history_.back();
    const std::size_t k = state_.count(j);
    double* h = heap_of(j);
    const double breakpoint =
        k == n_ ? sums_[j] : state_.sum(j) - static_cast<double>(k) * h[k];
    if (!(breakpoint < state_.theta())) return false;

    if (k == n_) {
      state_.deactivate(j);
    } else {
      const double value = h[k];
      std::push_heap(h, h + k + 1, std::greater<>());
      state_.grow(j, value);
    }
    history_.pop_back();
    state_.update_theta();
    tracer_.record(stats_.accumulator_drift);
    queue_.set(j, breakpoint);
    return true;
  }

  // Re-sums the selected entries of every active column and rebuilds the
  // accumulators, so the answer does not inherit incremental rounding.
  void refresh() {
    for (std::size_t j = 0; j < m_; ++j) {
      if (!state_.active(j)) continue;
      const double* h = heap_of(j);
      state_.reset_sum(j, std::accumulate(h, h + state_.count(j), 0.0));
    }
    if (state_.active_columns() > 0) {
      stats_.accumulator_drift = std::max(stats_.accumulator_drift, state_.recompute_accumulators());
    }
    state_.update_theta();
  }

  const DenseMatrix& y_;
  std::size_t n_;
  std::size_t m_;
  std::vector<double> sums_;
  ThetaState state_;
  ColumnQueue queue_;
  std::unique_ptr<double[]> pool_;
  std::vector<std::size_t> buffer_of_;
  std::size_t next_buffer_ = 0;
  std::vector<std::size_t> history_;
  std::vector<double> trace_;
  WorkStats stats_;
  Tracer tracer_;
};

ProjectionOutput dispatch(const DenseMatrix& y, double radius, Algorithm algo,
                          const ProjectionOptions& options) {
  switch (algo) {
    case Algorithm::naive:
      return run_naive(y, radius, options);
    case Algorithm::total_order:
      return run_total_order(y, radius, options);
    case Algorithm::inverse_total_order:
      return InverseTotalOrder(y, radius, options).run();
  }
  throw std::invalid_argument("unknown algorithm");
}

ProjectionOutput timed(const DenseMatrix& y, double radius, Algorithm algo,
                       const ProjectionOptions& options) {
  const auto start = Clock::now();
  ProjectionOutput out = dispatch(y, radius, algo, options);
  out.stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return out;
}

}  // namespace

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::naive:
      return "naive";
    case Algorithm::total_order:
      return "total_order";
    case Algorithm::inverse_total_order:
      return "inverse_total_order";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm algo : kAllAlgorithms) {
    if (to_string(algo) == name) return algo;
  }
  return std::nullopt;
}

ProjectionOutput recover_solution(const DenseMatrix& y, double theta, const ThetaState& state) {
  const std::size_t n = y.rows();
  const std::size_t m = y.cols();
  ProjectionOutput out{DenseMatrix(n, m), theta, std::vector<double>(m, 0.0),
                       std::vector<unsigned char>(m, 0), {}, {}};
  std::size_t accepted = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (!state.active(j)) {
      accepted += n;
      continue;
    }
    accepted += state.count(j) - 1;
    const double cap = (state.sum(j) - theta) / static_cast<double>(state.count(j));
    if (!(cap > 0.0)) continue;
    out.mu[j] = cap;
    out.active[j] = 1;
    const auto src = y.column(j);
    auto dst = out.X.column(j);
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::min(src[i], cap);
  }
  out.stats.K = accepted;
  out.stats.J = n * m - accepted;
  return out;
}

ProjectionOutput naive_projection(const DenseMatrix& y, double radius,
                                  const ProjectionOptions& options) {
  require_projectable(y, radius);
  return timed(y, radius, Algorithm::naive, options);
}

ProjectionOutput total_order_projection(const DenseMatrix& y, double radius,
                                        const ProjectionOptions& options) {
  require_projectable(y, radius);
  return timed(y, radius, Algorithm::total_order, options);
}

ProjectionOutput inverse_total_order_projection(const DenseMatrix& y, double radius,
                                                const ProjectionOptions& options) {
  require_projectable(y, radius);
  return timed(y, radius, Algorithm::inverse_total_order, options);
}

ProjectionOutput project_nonnegative(const DenseMatrix& y, double radius, Algorithm algo,
                                     const ProjectionOptions& options) {
  require_projectable(y, radius);
  return timed(y, radius, algo, options);
}

ProjectionOutput project_ball_l1inf(const DenseMatrix& y, double radius, Algorithm algo,
                                    const ProjectionOptions& options) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("radius must be nonnegative and finite");
  }
  const auto start = Clock::now();
  const std::size_t n = y.rows();
  const std::size_t m = y.cols();

  auto finish = [&](ProjectionOutput out) {
    out.stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return out;
  };

  if (radius == 0.0) {
    ProjectionOutput out{DenseMatrix(n, m), norm_linf_l1(y), std::vector<double>(m, 0.0),
                         std::vector<unsigned char>(m, 0), {}, {}};
    out.stats.K = n * m;
    return finish(std::move(out));
  }

  if (norm_l1_inf(y) <= radius) {
    ProjectionOutput out{y, 0.0, std::vector<double>(m, 0.0), std::vector<unsigned char>(m, 1),
                         {}, {}};
    for (std::size_t j = 0; j < m; ++j) {
      for (double v : y.column(j)) out.mu[j] = std::max(out.mu[j], std::abs(v));
    }
    out.stats.J = n * m;
    return finish(std::move(out));
  }

  const auto values = y.values();
  if (std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; })) {
    return finish(dispatch(y, radius, algo, options));
  }
  SignDecomposition parts = sign_decompose(y);
  ProjectionOutput out = dispatch(parts.magnitudes, radius, algo, options);
  out.X = recompose(parts.signs, out.X);
  return finish(std::move(out));
}

DenseMatrix prox_linf_l1(const DenseMatrix& y, double radius, Algorithm algo) {
  if (!(radius > 0.0)) throw std::invalid_argument("prox radius must be positive");
  DenseMatrix out = y;
  const DenseMatrix projected = project_ball_l1inf(y, radius, algo).X;
  auto dst = out.values();
  auto p = projected.values();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= p[k];
  return out;
}

}  // namespace l1inf
