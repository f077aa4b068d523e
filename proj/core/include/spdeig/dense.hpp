#pragma once

#include "spdeig/sparse.hpp"

#include <vector>

namespace spdeig {

/// Row-major dense matrix, just enough for the Ritz problems and the
/// spectral diagnostics. Not a performance path.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows * cols), fill) {}

  static DenseMatrix identity(index_t n);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  double& operator()(index_t i, index_t j) {
    return data_[static_cast<std::size_t>(i * cols_ + j)];
  }
  double operator()(index_t i, index_t j) const {
    return data_[static_cast<std::size_t>(i * cols_ + j)];
  }

  Vector column(index_t j) const;

 private:
  index_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix dense_from_sparse(const SparseMatrix& A);
DenseMatrix multiply(const DenseMatrix& A, const DenseMatrix& B);
Vector multiply(const DenseMatrix& A, const Vector& x);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // matching columns, orthonormal
};

/// Cyclic Jacobi rotations until the off-diagonal mass is at roundoff.
/// Robust rather than fast; guard sizes accordingly.
SymmetricEigen symmetric_eigen(DenseMatrix A);

}  // namespace spdeig
