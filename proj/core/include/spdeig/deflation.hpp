#pragma once

#include "spdeig/sparse.hpp"
#include "spdeig/vec.hpp"

#include <vector>

namespace spdeig {

/// Orthonormal columns Q = [v_1 ... v_j, u_k]: converged eigenvectors plus
/// the current iterate. All projected operators in the solvers act against
/// this basis. Mutated only by the outer driver between inner solves.
class DeflationBasis {
 public:
  index_t size() const { return static_cast<index_t>(cols_.size()); }
  bool empty() const { return cols_.empty(); }
  const Vector& column(index_t j) const { return cols_[static_cast<std::size_t>(j)]; }

  void push(Vector v) { cols_.push_back(std::move(v)); }
  void pop() { cols_.pop_back(); }
  void set_last(const Vector& v) { cols_.back() = v; }
  void clear() { cols_.clear(); }

  /// c -= Q (Q'c), one classical Gram-Schmidt pass.
  void project_once(Vector& c) const;

  /// max_i |q_i' v|, the orthogonality drift of v against the basis.
  double max_overlap(const Vector& v) const;

  /// max offdiagonal |q_i' q_l - delta| over all pairs (test diagnostic).
  double orthonormality_defect() const;

 private:
  std::vector<Vector> cols_;
};

struct OrthoOutcome {
  bool zero = false;        // v was numerically inside span(Q)
  double norm_ratio = 1.0;  // |result| / |input|
};

/// v <- v - Q(Q'v) in place, with one reorthogonalization pass when the
/// norm dropped more than tenfold. Flags v as zero when the remainder is
/// below 1e-14 of the input norm.
OrthoOutcome orthogonalize(const DeflationBasis& Q, Vector& v);

/// J = (I - QQ')(A - theta I)(I - QQ') restricted to inputs already
/// orthogonal to Q, so the right projector is skipped: one matvec per apply.
struct ProjectedJacobian {
  const SparseMatrix& A;
  double theta;
  const DeflationBasis& basis;
  /// Applies the right projector too and insists both routes agree;
  /// test-mode only.
  bool debug_check_right_projector = false;

  void apply(const Vector& z, Vector& out, MvpCounter* mvp = nullptr) const;
};

struct EigenResidual {
  double theta = 0.0;  // Rayleigh quotient of u
  Vector r;            // A u - theta u, for unit-normalized u
  double rnorm = 0.0;
};

/// One matvec. u is normalized internally; throws on the zero vector.
EigenResidual eigenresidual(const SparseMatrix& A, const Vector& u,
                            MvpCounter* mvp = nullptr);

}  // namespace spdeig
