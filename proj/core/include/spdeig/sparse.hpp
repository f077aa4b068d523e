#pragma once

#include "spdeig/vec.hpp"

#include <cstdint>
#include <vector>

namespace spdeig {

using index_t = std::int64_t;

/// Counts matrix-vector products with A, the hardware-independent cost
/// metric of the solvers. One run owns one counter through its trace.
struct MvpCounter {
  long long count = 0;
};

struct Triplet {
  index_t row = 0;
  index_t col = 0;
  double value = 0.0;
};

/// Symmetric sparse matrix in CSR form. Both triangles are stored so a
/// matvec is a plain row sweep. Immutable after assembly, safe to share.
struct SparseMatrix {
  index_t n = 0;
  std::vector<index_t> row_ptr;  // size n+1
  std::vector<index_t> col_idx;  // size nnz, strictly increasing per row
  std::vector<double> values;    // size nnz

  index_t nnz() const { return static_cast<index_t>(values.size()); }

  /// Diagonal entry of row i, 0 when the entry is absent.
  double diag(index_t i) const;

  /// Stored entries with col <= row.
  index_t lower_nnz() const;
};

/// Assembles CSR from triplets. With symmetrize=true every off-diagonal
/// entry is mirrored; duplicate coordinates must carry equal values
/// (relative 1e-12), otherwise the input is rejected as nonsymmetric.
SparseMatrix from_triplets(index_t n, const std::vector<Triplet>& entries,
                           bool symmetrize);

/// Structural invariants: monotone row_ptr, strictly increasing columns,
/// indices in range, finite values, numerically symmetric value pattern.
/// Throws std::invalid_argument on the first violation.
void verify_structure(const SparseMatrix& A);

/// SPD candidate check: every diagonal entry present and strictly positive.
bool has_positive_diagonal(const SparseMatrix& A);

/// y = A*x. Counts one product on the caller's counter when given.
void matvec(const SparseMatrix& A, const Vector& x, Vector& y,
            MvpCounter* mvp = nullptr);
Vector matvec(const SparseMatrix& A, const Vector& x, MvpCounter* mvp = nullptr);

/// q(u) = (u'Au)/(u'u). Throws on the zero vector.
double rayleigh_quotient(const SparseMatrix& A, const Vector& u,
                         MvpCounter* mvp = nullptr);

double frobenius_norm(const SparseMatrix& A);

}  // namespace spdeig
