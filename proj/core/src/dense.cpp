#include "spdeig/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spdeig {

DenseMatrix DenseMatrix::identity(index_t n) {
  DenseMatrix I(n, n, 0.0);
  for (index_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

Vector DenseMatrix::column(index_t j) const {
  Vector c(static_cast<std::size_t>(rows_));
  for (index_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix dense_from_sparse(const SparseMatrix& A) {
  DenseMatrix D(A.n, A.n, 0.0);
  for (index_t i = 0; i < A.n; ++i)
    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
      D(i, A.col_idx[p]) = A.values[p];
  return D;
}

DenseMatrix multiply(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix C(A.rows(), B.cols(), 0.0);
  for (index_t i = 0; i < A.rows(); ++i)
    for (index_t k = 0; k < A.cols(); ++k) {
      const double aik = A(i, k);
      if (aik == 0.0) continue;
      for (index_t j = 0; j < B.cols(); ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

Vector multiply(const DenseMatrix& A, const Vector& x) {
  if (A.cols() != static_cast<index_t>(x.size()))
    throw std::invalid_argument("multiply: shape mismatch");
  Vector y(static_cast<std::size_t>(A.rows()), 0.0);
  for (index_t i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (index_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

SymmetricEigen symmetric_eigen(DenseMatrix A) {
  const index_t n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("symmetric_eigen: not square");

  DenseMatrix V = DenseMatrix::identity(n);
  double frob = 0.0;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) frob += A(i, j) * A(i, j);
  frob = std::sqrt(frob);
  const double stop = 1e-15 * std::max(frob, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (index_t i = 0; i < n; ++i)
      for (index_t j = i + 1; j < n; ++j) off += 2.0 * A(i, j) * A(i, j);
    if (std::sqrt(off) <= stop) break;

    for (index_t p = 0; p < n - 1; ++p)
      for (index_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app = A(p, p), aqq = A(q, q);
        A(p, p) = app - t * apq;
        A(q, q) = aqq + t * apq;
        A(p, q) = A(q, p) = 0.0;
        for (index_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            const double akp = A(k, p), akq = A(k, q);
            A(k, p) = A(p, k) = c * akp - s * akq;
            A(k, q) = A(q, k) = s * akp + c * akq;
          }
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<index_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(),
            [&](index_t a, index_t b) { return A(a, a) < A(b, b); });

  SymmetricEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = DenseMatrix(n, n, 0.0);
  for (index_t j = 0; j < n; ++j) {
    out.values[j] = A(order[j], order[j]);
    for (index_t i = 0; i < n; ++i) out.vectors(i, j) = V(i, order[j]);
  }
  return out;
}

}  // namespace spdeig
