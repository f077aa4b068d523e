#include "spdeig/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spdeig {

namespace {

// Binary search for column j within row i, -1 when absent.
index_t find_in_row(const SparseMatrix& A, index_t i, index_t j) {
  const index_t lo = A.row_ptr[i], hi = A.row_ptr[i + 1];
  auto first = A.col_idx.begin() + lo;
  auto last = A.col_idx.begin() + hi;
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return -1;
  return lo + static_cast<index_t>(it - first);
}

}  // namespace

double SparseMatrix::diag(index_t i) const {
  const index_t p = find_in_row(*this, i, i);
  return p < 0 ? 0.0 : values[static_cast<std::size_t>(p)];
}

index_t SparseMatrix::lower_nnz() const {
  index_t count = 0;
  for (index_t i = 0; i < n; ++i)
    for (index_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      if (col_idx[p] <= i) ++count;
  return count;
}

SparseMatrix from_triplets(index_t n, const std::vector<Triplet>& entries,
                           bool symmetrize) {
  if (n <= 0) throw std::invalid_argument("from_triplets: n must be positive");

  std::vector<Triplet> work;
  work.reserve(entries.size() * (symmetrize ? 2 : 1));
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw std::invalid_argument("from_triplets: index out of range");
    if (!std::isfinite(t.value))
      throw std::invalid_argument("from_triplets: nonfinite value");
    work.push_back(t);
    if (symmetrize && t.row != t.col) work.push_back({t.col, t.row, t.value});
  }

  std::sort(work.begin(), work.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  // Collapse duplicates; conflicting values mean the input was stored with
  // both triangles disagreeing, which we refuse.
  std::vector<Triplet> dedup;
  dedup.reserve(work.size());
  for (const Triplet& t : work) {
    if (!dedup.empty() && dedup.back().row == t.row && dedup.back().col == t.col) {
      const double ref = dedup.back().value;
      if (std::abs(ref - t.value) > 1e-12 * std::max(1.0, std::abs(ref)))
        throw std::invalid_argument(
            "from_triplets: duplicate entry with conflicting values at (" +
            std::to_string(t.row) + "," + std::to_string(t.col) + ")");
      continue;
    }
    dedup.push_back(t);
  }

  SparseMatrix A;
  A.n = n;
  A.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  A.col_idx.resize(dedup.size());
  A.values.resize(dedup.size());
  for (const Triplet& t : dedup) ++A.row_ptr[t.row + 1];
  for (index_t i = 0; i < n; ++i) A.row_ptr[i + 1] += A.row_ptr[i];
  std::vector<index_t> next(A.row_ptr.begin(), A.row_ptr.end() - 1);
  for (const Triplet& t : dedup) {
    const index_t p = next[t.row]++;
    A.col_idx[p] = t.col;
    A.values[p] = t.value;
  }
  return A;
}

void verify_structure(const SparseMatrix& A) {
  if (A.n <= 0) throw std::invalid_argument("matrix: empty");
  if (A.row_ptr.size() != static_cast<std::size_t>(A.n) + 1)
    throw std::invalid_argument("matrix: row_ptr size");
  if (A.row_ptr.front() != 0 || A.row_ptr.back() != A.nnz())
    throw std::invalid_argument("matrix: row_ptr endpoints");
  for (index_t i = 0; i < A.n; ++i) {
    if (A.row_ptr[i] > A.row_ptr[i + 1])
      throw std::invalid_argument("matrix: row_ptr not nondecreasing");
    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) {
      if (A.col_idx[p] < 0 || A.col_idx[p] >= A.n)
        throw std::invalid_argument("matrix: column out of range");
      if (p > A.row_ptr[i] && A.col_idx[p] <= A.col_idx[p - 1])
        throw std::invalid_argument("matrix: columns not strictly increasing");
      if (!std::isfinite(A.values[p]))
        throw std::invalid_argument("matrix: nonfinite value");
    }
  }
  // Numerical symmetry of the stored pattern.
  for (index_t i = 0; i < A.n; ++i) {
    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) {
      const index_t j = A.col_idx[p];
      if (j <= i) continue;
      const index_t q = find_in_row(A, j, i);
      const double v = A.values[p];
      if (q < 0 || std::abs(A.values[q] - v) > 1e-12 * std::max(1.0, std::abs(v)))
        throw std::invalid_argument("matrix: not numerically symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

bool has_positive_diagonal(const SparseMatrix& A) {
  for (index_t i = 0; i < A.n; ++i)
    if (A.diag(i) <= 0.0) return false;
  return true;
}

void matvec(const SparseMatrix& A, const Vector& x, Vector& y, MvpCounter* mvp) {
  if (static_cast<index_t>(x.size()) != A.n)
    throw std::invalid_argument("matvec: dimension mismatch");
  y.resize(x.size());
  for (index_t i = 0; i < A.n; ++i) {
    double sum = 0.0;
    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
      sum += A.values[p] * x[A.col_idx[p]];
    y[i] = sum;
  }
  if (mvp) ++mvp->count;
}

Vector matvec(const SparseMatrix& A, const Vector& x, MvpCounter* mvp) {
  Vector y;
  matvec(A, x, y, mvp);
  return y;
}

double rayleigh_quotient(const SparseMatrix& A, const Vector& u, MvpCounter* mvp) {
  const double uu = dot(u, u);
  if (uu == 0.0) throw std::domain_error("rayleigh_quotient: zero vector");
  const Vector au = matvec(A, u, mvp);
  return dot(u, au) / uu;
}

double frobenius_norm(const SparseMatrix& A) {
  double s = 0.0;
  for (double v : A.values) s += v * v;
  return std::sqrt(s);
}

}  // namespace spdeig
