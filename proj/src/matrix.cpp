#include "l1inf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace l1inf {

namespace {

void require_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("matrix dimensions must be positive, got " + std::to_string(rows) +
                                "x" + std::to_string(cols));
  }
}

void require_finite(std::span<const double> values) {
  auto bad = std::find_if(values.begin(), values.end(), [](double v) { return !std::isfinite(v); });
  if (bad != values.end()) {
    throw std::invalid_argument("matrix entry " + std::to_string(bad - values.begin()) +
                                " is not finite");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  if (!std::isfinite(value)) throw std::invalid_argument("fill value is not finite");
  values_.assign(rows * cols, value + 0.0);
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.begin()->size();
  require_shape(n, m);
  std::vector<double> values(n * m);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != m) throw std::invalid_argument("ragged row in matrix literal");
    std::size_t j = 0;
    for (double v : row) values[j++ * n + i] = v;
    ++i;
  }
  return from_column_major(n, m, std::move(values));
}

DenseMatrix DenseMatrix::from_column_major(std::size_t rows, std::size_t cols,
                                           std::vector<double> values) {
  require_shape(rows, cols);
  if (values.size() != rows * cols) {
    throw std::invalid_argument("expected " + std::to_string(rows * cols) + " values, got " +
                                std::to_string(values.size()));
  }
  require_finite(values);
  for (double& v : values) v += 0.0;  // folds -0.0 into +0.0
  DenseMatrix out(rows, cols);
  out.values_ = std::move(values);
  return out;
}

}  // namespace l1inf
