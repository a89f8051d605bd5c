#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace l1inf {

/// Dense real matrix stored column-major. Every algorithm in this library
/// streams down columns, so a column is a contiguous span.
///
/// Entries are checked for finiteness by the constructors, which also store
/// -0.0 as +0.0 so that a sign/magnitude split recomposes bit-for-bit. The
/// element accessors do not re-validate.
class DenseMatrix {
 public:
  /// Matrix of the given shape filled with `value`. Throws
  /// std::invalid_argument on a zero dimension or non-finite fill.
  DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0);

  /// Row-wise literal, e.g. `from_rows({{1, -2}, {3, 4}})`.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  /// Adopts column-major storage. Throws std::invalid_argument when the
  /// size does not match or an entry is NaN/infinite.
  static DenseMatrix from_column_major(std::size_t rows, std::size_t cols,
                                       std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[j * rows_ + i]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[j * rows_ + i]; }

  std::span<const double> column(std::size_t j) const noexcept {
    return {values_.data() + j * rows_, rows_};
  }
  std::span<double> column(std::size_t j) noexcept { return {values_.data() + j * rows_, rows_}; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Entrywise sign in {-1, 0, +1}, same shape and layout as its source.
class SignPattern {
 public:
  SignPattern(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), signs_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int8_t operator()(std::size_t i, std::size_t j) const noexcept { return signs_[j * rows_ + i]; }
  std::int8_t& operator()(std::size_t i, std::size_t j) noexcept { return signs_[j * rows_ + i]; }
  std::span<const std::int8_t> values() const noexcept { return signs_; }
  std::span<std::int8_t> values() noexcept { return signs_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int8_t> signs_;
};

}  // namespace l1inf
