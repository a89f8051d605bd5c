#pragma once

#include "l1inf/matrix.hpp"

namespace l1inf {

/// Sum over columns of the largest absolute entry.
double norm_l1_inf(const DenseMatrix& y) noexcept;

/// Largest column sum of absolute entries; the dual of norm_l1_inf.
double norm_linf_l1(const DenseMatrix& y) noexcept;

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);
double inner_product(const DenseMatrix& a, const DenseMatrix& b);

struct SignDecomposition {
  SignPattern signs;
  DenseMatrix magnitudes;
};

SignDecomposition sign_decompose(const DenseMatrix& y);

/// Elementwise signs * magnitudes.
DenseMatrix recompose(const SignPattern& signs, const DenseMatrix& magnitudes);

struct SparsityReport {
  double entry_sparsity = 0.0;   // fraction of entries with |x| <= zero_tolerance
  double column_sparsity = 0.0;  // fraction of columns made only of such entries
  double zero_tolerance = 0.0;
};

/// Throws std::invalid_argument for a negative tolerance.
SparsityReport sparsity_report(const DenseMatrix& x, double zero_tolerance = 0.0);

}  // namespace l1inf
