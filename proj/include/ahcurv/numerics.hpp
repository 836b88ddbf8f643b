#pragma once

#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "ahcurv/errors.hpp"

namespace ahcurv {

using DenseMatrix = Eigen::MatrixXd;

/// Row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  mpq_class& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  const mpq_class& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }

  void append_row(const std::vector<mpq_class>& row);
  Eigen::MatrixXd to_double() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<mpq_class> entries_;
};

struct FloatNullspace {
  Eigen::MatrixXd basis;  // cols x k, orthonormal columns
  Eigen::VectorXd singular_values;
  double sigma_max = 0.0;
  /// Smallest singular value above the threshold (0 if none).
  double smallest_retained = 0.0;
  int dimension() const { return static_cast<int>(basis.cols()); }
};

/// Kernel from the SVD: right singular vectors whose singular value is at
/// most rel_threshold * sigma_max, plus the columns beyond min(rows, cols).
FloatNullspace nullspace_float(const DenseMatrix& a, double rel_threshold = 1e-10);

struct ExactNullspace {
  int rank = 0;
  int dimension = 0;
  std::vector<int> pivot_columns;
  /// Kernel basis, one vector per free column (empty unless requested).
  std::vector<std::vector<mpq_class>> basis;
};

/// Fraction-free (Bareiss) elimination; no tolerance anywhere.
ExactNullspace nullspace_exact(const RationalMatrix& a, bool want_basis = true);

/// ||A - (tr A / dim) I||_F / max(||A||_F, 1e-30)
double metric_proportionality_residual(const Eigen::MatrixXd& a);

}  // namespace ahcurv
