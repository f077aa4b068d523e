#include "spdeig/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace spdeig {

DenseSpectrum dense_eigen(const SparseMatrix& A) {
  if (A.n > 2000)
    throw std::invalid_argument("dense_eigen: n exceeds the 2000 guard");
  SymmetricEigen eig = symmetric_eigen(dense_from_sparse(A));
  return {std::move(eig.values), std::move(eig.vectors)};
}

double relative_separation(const std::vector<double>& eigenvalues, int j) {
  if (j < 1 || static_cast<std::size_t>(j) >= eigenvalues.size())
    throw std::invalid_argument("relative_separation: level out of range");
  const double lo = eigenvalues[static_cast<std::size_t>(j - 1)];
  const double hi = eigenvalues[static_cast<std::size_t>(j)];
  return lo / (hi - lo);
}

namespace {

// P <- -ss'/alpha + (I - sr'/alpha) P (I - rs'/alpha), alpha = s'r.
void bfgs_dense_update(DenseMatrix& P, const Vector& s, const Vector& r,
                       double alpha) {
  const index_t n = P.rows();
  Vector t(static_cast<std::size_t>(n), 0.0);  // P r (P symmetric)
  for (index_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (index_t j = 0; j < n; ++j) sum += P(i, j) * r[j];
    t[i] = sum;
  }
  const double rtr = dot(r, t);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j)
      P(i, j) += -s[i] * t[j] / alpha - t[i] * s[j] / alpha +
                 s[i] * s[j] * (rtr / (alpha * alpha) - 1.0 / alpha);
}

void project_columns(const DeflationBasis& Q, DenseMatrix& M) {
  const index_t n = M.rows();
  for (index_t c = 0; c < M.cols(); ++c) {
    Vector col(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) col[i] = M(i, c);
    Q.project_once(col);
    for (index_t i = 0; i < n; ++i) M(i, c) = col[i];
  }
}

void symmetrize(DenseMatrix& M) {
  for (index_t i = 0; i < M.rows(); ++i)
    for (index_t j = i + 1; j < M.cols(); ++j) {
      const double v = 0.5 * (M(i, j) + M(j, i));
      M(i, j) = M(j, i) = v;
    }
}

}  // namespace

PrecondSpectrum preconditioned_jacobian_spectrum(const SparseMatrix& A,
                                                 double theta,
                                                 const DeflationBasis& basis,
                                                 const BfgsWindow& window,
                                                 const ICFactor& F) {
  const index_t n = A.n;
  if (n > 500)
    throw std::invalid_argument(
        "preconditioned_jacobian_spectrum: n exceeds the 500 guard");

  // Dense projected Jacobian.
  DenseMatrix J = dense_from_sparse(A);
  for (index_t i = 0; i < n; ++i) J(i, i) -= theta;
  project_columns(basis, J);
  // Left projector via symmetry: project rows as columns of the transpose.
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i + 1; j < n; ++j) std::swap(J(i, j), J(j, i));
  project_columns(basis, J);
  symmetrize(J);

  // PSD square root; the Jacobian may carry slightly negative directions
  // (roundoff, or a not-yet-settled iterate). They are clipped and reported.
  SymmetricEigen jeig = symmetric_eigen(J);
  PrecondSpectrum out;
  for (double w : jeig.values)
    if (w < 0.0) {
      ++out.clipped;
      out.most_negative_j_eig = std::min(out.most_negative_j_eig, w);
    }
  DenseMatrix sqrtJ(n, n, 0.0);
  for (index_t k = 0; k < n; ++k) {
    const double w = jeig.values[static_cast<std::size_t>(k)];
    const double sw = w > 0.0 ? std::sqrt(w) : 0.0;
    if (sw == 0.0) continue;
    for (index_t i = 0; i < n; ++i) {
      const double vi = jeig.vectors(i, k) * sw;
      if (vi == 0.0) continue;
      for (index_t j = 0; j < n; ++j) sqrtJ(i, j) += vi * jeig.vectors(j, k);
    }
  }

  // Dense inverse of L L' column by column, then the window recursion.
  DenseMatrix P(n, n, 0.0);
  {
    Vector e(static_cast<std::size_t>(n), 0.0), col;
    for (index_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      apply_p0(F, e, col);
      for (index_t i = 0; i < n; ++i) P(i, j) = col[i];
      e[j] = 0.0;
    }
  }
  for (index_t i = 0; i < window.size(); ++i) {
    const BfgsPair& p = window.pair(i);
    bfgs_dense_update(P, p.s, p.r, p.alpha);
  }
  project_columns(basis, P);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i + 1; j < n; ++j) std::swap(P(i, j), P(j, i));
  project_columns(basis, P);
  symmetrize(P);

  DenseMatrix tilde = multiply(sqrtJ, multiply(P, sqrtJ));
  symmetrize(tilde);
  SymmetricEigen teig = symmetric_eigen(tilde);
  out.eigenvalues = std::move(teig.values);

  const double lmax = out.eigenvalues.back();
  const double cutoff = 1e-10 * std::max(lmax, 0.0);
  double lmin_pos = 0.0;
  out.e_norm = 0.0;
  for (double w : out.eigenvalues)
    if (w > cutoff) {
      if (lmin_pos == 0.0) lmin_pos = w;
      out.e_norm = std::max(out.e_norm, std::abs(1.0 - w));
    }
  out.kappa = lmin_pos > 0.0 ? lmax / lmin_pos : 0.0;
  return out;
}

}  // namespace spdeig
