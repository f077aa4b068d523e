#pragma once

#include "spdeig/sparse.hpp"

#include <stdexcept>

namespace spdeig {

/// Factorization could not complete even after the maximum diagonal shift;
/// callers fall back to the diagonal preconditioner.
struct IcholBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incomplete Cholesky factor L with A ~ L L'. Applying (L L')^{-1} is the
/// initial preconditioner of every solver here.
struct ICFactor {
  SparseMatrix L;     // lower triangular, diagonal stored last in each row
  double fill_ratio = 0.0;  // nnz(L) / nnz(lower triangle of A)
  index_t lfil = 0;
  double tau_ic = 0.0;
  double shift_used = 0.0;  // diagonal shift applied on breakdown, 0 if none
};

/// Row-wise dual-threshold IC: entries below tau_ic times the 2-norm of the
/// corresponding row of A are dropped at elimination time, then only the
/// lfil largest off-diagonals of the row are kept (the diagonal always is).
/// A nonpositive pivot restarts the whole factorization on A + shift*I,
/// shift growing tenfold from 1e-3 * max(diag A), at most 8 retries.
ICFactor ic_factor(const SparseMatrix& A, index_t lfil, double tau_ic);

/// L = sqrt(diag(A)), the breakdown fallback.
ICFactor diagonal_factor(const SparseMatrix& A);

/// c = (L L')^{-1} g by forward then backward substitution.
void apply_p0(const ICFactor& F, const Vector& g, Vector& c);
Vector apply_p0(const ICFactor& F, const Vector& g);

}  // namespace spdeig
