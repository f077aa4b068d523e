#include "spdeig/ichol.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace spdeig {

namespace {

// One factorization sweep over A + shift*I. Returns false on a nonpositive
// pivot so the caller can restart with a larger shift.
bool try_factor(const SparseMatrix& A, index_t lfil, double tau_ic, double shift,
                const std::vector<double>& row_norms, SparseMatrix& L) {
  const index_t n = A.n;
  L.n = n;
  L.row_ptr.assign(1, 0);
  L.col_idx.clear();
  L.values.clear();

  // Column lists of the already-built part of L: (row, value) per column,
  // naturally sorted by row.
  std::vector<std::vector<std::pair<index_t, double>>> cols(n);
  std::vector<double> ldiag(n, 0.0);

  std::vector<double> w(n, 0.0);
  std::vector<char> in_pattern(n, 0);
  std::vector<index_t> touched;

  using MinHeap = std::priority_queue<index_t, std::vector<index_t>,
                                      std::greater<index_t>>;

  for (index_t i = 0; i < n; ++i) {
    touched.clear();
    MinHeap pending;

    auto enter = [&](index_t k, double v) {
      if (!in_pattern[k]) {
        in_pattern[k] = 1;
        touched.push_back(k);
        w[k] = v;
        if (k < i) pending.push(k);
      } else {
        w[k] += v;
      }
    };

    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) {
      const index_t j = A.col_idx[p];
      if (j <= i) enter(j, A.values[p]);
    }
    enter(i, shift);  // also creates the slot when A lacks the diagonal

    std::vector<std::pair<index_t, double>> kept;  // off-diagonals of row i
    while (!pending.empty()) {
      const index_t k = pending.top();
      pending.pop();
      const double lik = w[k] / ldiag[k];
      if (std::abs(lik) < tau_ic * row_norms[i]) continue;  // dropped, no propagation
      kept.push_back({k, lik});
      w[i] -= lik * lik;
      for (const auto& [j, ljk] : cols[k]) {
        if (j >= i) break;
        if (!in_pattern[j]) enter(j, -lik * ljk);
        else w[j] -= lik * ljk;
      }
    }

    const double pivot = w[i];
    for (index_t k : touched) {
      in_pattern[k] = 0;
      w[k] = 0.0;
    }
    if (!(pivot > 0.0) || !std::isfinite(pivot)) return false;

    if (static_cast<index_t>(kept.size()) > lfil) {
      std::nth_element(kept.begin(), kept.begin() + lfil, kept.end(),
                       [](const auto& a, const auto& b) {
                         return std::abs(a.second) > std::abs(b.second);
                       });
      kept.resize(static_cast<std::size_t>(lfil));
    }
    std::sort(kept.begin(), kept.end());

    const double dii = std::sqrt(pivot);
    ldiag[i] = dii;
    for (const auto& [k, v] : kept) {
      L.col_idx.push_back(k);
      L.values.push_back(v);
      cols[k].push_back({i, v});
    }
    L.col_idx.push_back(i);
    L.values.push_back(dii);
    L.row_ptr.push_back(static_cast<index_t>(L.col_idx.size()));
  }
  return true;
}

}  // namespace

ICFactor ic_factor(const SparseMatrix& A, index_t lfil, double tau_ic) {
  if (lfil < 0) throw std::invalid_argument("ic_factor: lfil must be >= 0");
  if (tau_ic < 0.0) throw std::invalid_argument("ic_factor: tau_ic must be >= 0");

  const index_t n = A.n;
  std::vector<double> row_norms(n, 0.0);
  double max_diag = 0.0;
  for (index_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
      s += A.values[p] * A.values[p];
    row_norms[i] = std::sqrt(s);
    max_diag = std::max(max_diag, A.diag(i));
  }
  if (max_diag <= 0.0)
    throw std::invalid_argument("ic_factor: matrix has no positive diagonal");

  ICFactor F;
  F.lfil = lfil;
  F.tau_ic = tau_ic;

  double shift = 0.0;
  for (int attempt = 0; attempt <= 8; ++attempt) {
    if (try_factor(A, lfil, tau_ic, shift, row_norms, F.L)) {
      F.shift_used = shift;
      F.fill_ratio = static_cast<double>(F.L.nnz()) /
                     static_cast<double>(A.lower_nnz());
      return F;
    }
    shift = (shift == 0.0) ? 1e-3 * max_diag : 10.0 * shift;
  }
  throw IcholBreakdown("ic_factor: breakdown persists after maximum shift");
}

ICFactor diagonal_factor(const SparseMatrix& A) {
  ICFactor F;
  F.L.n = A.n;
  F.L.row_ptr.assign(1, 0);
  for (index_t i = 0; i < A.n; ++i) {
    const double d = A.diag(i);
    if (d <= 0.0)
      throw std::invalid_argument("diagonal_factor: nonpositive diagonal");
    F.L.col_idx.push_back(i);
    F.L.values.push_back(std::sqrt(d));
    F.L.row_ptr.push_back(i + 1);
  }
  F.fill_ratio = static_cast<double>(A.n) / static_cast<double>(A.lower_nnz());
  return F;
}

void apply_p0(const ICFactor& F, const Vector& g, Vector& c) {
  const SparseMatrix& L = F.L;
  const index_t n = L.n;
  if (static_cast<index_t>(g.size()) != n)
    throw std::invalid_argument("apply_p0: dimension mismatch");

  // Forward solve L y = g; the diagonal is the last entry of each row.
  c.resize(g.size());
  Vector& y = c;
  for (index_t i = 0; i < n; ++i) {
    double s = g[i];
    const index_t last = L.row_ptr[i + 1] - 1;
    for (index_t p = L.row_ptr[i]; p < last; ++p) s -= L.values[p] * y[L.col_idx[p]];
    y[i] = s / L.values[last];
  }
  // Backward solve L' c = y, in place.
  for (index_t i = n - 1; i >= 0; --i) {
    const index_t last = L.row_ptr[i + 1] - 1;
    const double ci = c[i] / L.values[last];
    c[i] = ci;
    for (index_t p = L.row_ptr[i]; p < last; ++p) c[L.col_idx[p]] -= L.values[p] * ci;
  }
}

Vector apply_p0(const ICFactor& F, const Vector& g) {
  Vector c;
  apply_p0(F, g, c);
  return c;
}

}  // namespace spdeig
