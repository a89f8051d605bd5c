#include "l1inf/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace l1inf {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shapes differ");
  }
}

}  // namespace

double norm_l1_inf(const DenseMatrix& y) noexcept {
  double total = 0.0;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    double peak = 0.0;
    for (double v : y.column(j)) peak = std::max(peak, std::abs(v));
    total += peak;
  }
  return total;
}

double norm_linf_l1(const DenseMatrix& y) noexcept {
  double peak = 0.0;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    double sum = 0.0;
    for (double v : y.column(j)) sum += std::abs(v);
    peak = std::max(peak, sum);
  }
  return peak;
}

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  double acc = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) acc += (av[k] - bv[k]) * (av[k] - bv[k]);
  return std::sqrt(acc);
}

double inner_product(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  double acc = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) acc += av[k] * bv[k];
  return acc;
}

SignDecomposition sign_decompose(const DenseMatrix& y) {
  SignDecomposition out{SignPattern(y.rows(), y.cols()), DenseMatrix(y.rows(), y.cols())};
  auto src = y.values();
  auto signs = out.signs.values();
  auto mags = out.magnitudes.values();
  for (std::size_t k = 0; k < src.size(); ++k) {
    const double v = src[k];
    signs[k] = static_cast<std::int8_t>((v > 0.0) - (v < 0.0));
    mags[k] = std::abs(v);
  }
  return out;
}

DenseMatrix recompose(const SignPattern& signs, const DenseMatrix& magnitudes) {
  if (signs.rows() != magnitudes.rows() || signs.cols() != magnitudes.cols()) {
    throw std::invalid_argument("sign pattern and magnitudes differ in shape");
  }
  DenseMatrix out(magnitudes.rows(), magnitudes.cols());
  auto s = signs.values();
  auto mag = magnitudes.values();
  auto dst = out.values();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = static_cast<double>(s[k]) * mag[k];
  return out;
}

SparsityReport sparsity_report(const DenseMatrix& x, double zero_tolerance) {
  if (!(zero_tolerance >= 0.0)) throw std::invalid_argument("zero_tolerance must be >= 0");
  std::size_t zero_entries = 0;
  std::size_t zero_columns = 0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::size_t here = 0;
    for (double v : x.column(j)) here += std::abs(v) <= zero_tolerance;
    zero_entries += here;
    zero_columns += here == x.rows();
  }
  return {static_cast<double>(zero_entries) / static_cast<double>(x.size()),
          static_cast<double>(zero_columns) / static_cast<double>(x.cols()), zero_tolerance};
}

}  // namespace l1inf
