#include "spdeig/jd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace spdeig {

namespace {

using Clock = std::chrono::steady_clock;

// CGS with one unconditional second pass; returns false when v collapses.
bool orthonormalize_against(const DeflationBasis& fixed,
                            const std::vector<Vector>& cols, Vector& v) {
  const double norm0 = nrm2(v);
  if (norm0 == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    fixed.project_once(v);
    std::vector<double> z(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) z[j] = dot(cols[j], v);
    for (std::size_t j = 0; j < cols.size(); ++j) axpy(-z[j], cols[j], v);
  }
  const double norm1 = nrm2(v);
  if (norm1 < 1e-12 * norm0) return false;
  scal(1.0 / norm1, v);
  return true;
}

void append_column(RitzSubspace& S, const SparseMatrix& A, Vector v,
                   MvpCounter* mvp) {
  Vector w = matvec(A, v, mvp);
  const index_t m = S.dim();
  DenseMatrix H(m + 1, m + 1, 0.0);
  for (index_t i = 0; i < m; ++i) {
    for (index_t j = 0; j < m; ++j) H(i, j) = S.H(i, j);
    const double hij = dot(S.V[i], w);
    H(i, m) = H(m, i) = hij;
  }
  H(m, m) = dot(v, w);
  S.H = std::move(H);
  S.V.push_back(std::move(v));
  S.W.push_back(std::move(w));
}

void rebuild_h(RitzSubspace& S) {
  const index_t m = S.dim();
  S.H = DenseMatrix(m, m, 0.0);
  for (index_t i = 0; i < m; ++i)
    for (index_t j = i; j < m; ++j) {
      const double hij = dot(S.V[i], S.W[j]);
      S.H(i, j) = S.H(j, i) = hij;
    }
}

// Replaces the subspace by its Ritz combinations for the given columns of Y.
// W transforms exactly alongside V, so no matvecs are spent.
void compress(RitzSubspace& S, const DenseMatrix& Y,
              const std::vector<index_t>& keep) {
  const std::size_t n = S.V.front().size();
  std::vector<Vector> V2, W2;
  for (index_t col : keep) {
    Vector v(n, 0.0), w(n, 0.0);
    for (index_t i = 0; i < S.dim(); ++i) {
      const double yic = Y(i, col);
      axpy(yic, S.V[static_cast<std::size_t>(i)], v);
      axpy(yic, S.W[static_cast<std::size_t>(i)], w);
    }
    V2.push_back(std::move(v));
    W2.push_back(std::move(w));
  }
  S.V = std::move(V2);
  S.W = std::move(W2);
  rebuild_h(S);
}

}  // namespace

JdOutcome jd_solve(const SparseMatrix& A, const ICFactor& F, const JdConfig& cfg,
                   const std::vector<Vector>& initial_deflation) {
  if (cfg.m_min < 1 || cfg.m_min >= cfg.m_max || cfg.m_max > 50)
    throw std::invalid_argument("jd_solve: require 1 <= m_min < m_max <= 50");
  if (!has_positive_diagonal(A))
    throw std::invalid_argument("jd_solve: matrix diagonal is not positive");

  JdOutcome out;
  MvpCounter& mvp = out.trace.mvp;
  PcgConfig pcg_cfg = cfg.pcg;
  pcg_cfg.tau_outer = cfg.tau;

  DeflationBasis converged;
  for (Vector v : initial_deflation) {
    if (orthogonalize(converged, v).zero)
      throw std::invalid_argument("jd_solve: dependent initial deflation vector");
    normalize(v);
    converged.push(std::move(v));
  }

  const auto t0 = Clock::now();
  RitzSubspace S;
  std::uint64_t draw = 0;
  auto fresh_vector = [&]() {
    for (;;) {
      Vector v = random_vector(static_cast<std::size_t>(A.n), cfg.seed + draw++);
      if (orthonormalize_against(converged, S.V, v)) return v;
    }
  };
  for (int i = 0; i < cfg.m_min; ++i) append_column(S, A, fresh_vector(), &mvp);

  BfgsWindow window(cfg.bfgs_update_hook ? cfg.k_max : 0);

  for (int level = 1; level <= cfg.n_eig; ++level) {
    const long long mvp0 = mvp.count;
    window.clear();
    int outer = 0;
    double prev_theta = 0.0;
    for (;;) {
      SymmetricEigen ritz = symmetric_eigen(S.H);
      const double theta = ritz.values[0];

      Vector u(static_cast<std::size_t>(A.n), 0.0);
      Vector au(static_cast<std::size_t>(A.n), 0.0);
      for (index_t i = 0; i < S.dim(); ++i) {
        const double yi = ritz.vectors(i, 0);
        axpy(yi, S.V[static_cast<std::size_t>(i)], u);
        axpy(yi, S.W[static_cast<std::size_t>(i)], au);
      }
      Vector r = au;
      axpy(-theta, u, r);
      const double rnorm = nrm2(r);
      if (outer > 0) {
        out.trace.corrections.back().rnorm_after = rnorm;
        if (theta > prev_theta + 10.0 * cfg.tau * prev_theta)
          ++out.trace.theta_increase_events;
      }
      prev_theta = theta;

      const bool accepted = rnorm <= cfg.tau * theta;
      if (accepted || outer >= cfg.itmax) {
        normalize(u);
        EigenPair pair;
        pair.lambda = theta;
        pair.vector = u;
        pair.level = level;
        pair.outer_its = outer;
        pair.mvp_newton = mvp.count - mvp0;
        pair.converged = accepted;
        pair.final_residual_rel = rnorm / theta;
        out.pairs.push_back(std::move(pair));
        out.all_converged = out.all_converged && accepted;
        out.trace.newton_outer_iterations += outer;

        converged.push(u);
        // Deflate: keep the best non-converged Ritz vectors, re-orthogonalize
        // them against everything converged, and rebuild W and H honestly.
        std::vector<Vector> retained;
        const std::size_t nrows = u.size();
        for (index_t c = 1;
             c < S.dim() && static_cast<int>(retained.size()) < cfg.m_min; ++c) {
          Vector v(nrows, 0.0);
          for (index_t i = 0; i < S.dim(); ++i)
            axpy(ritz.vectors(i, c), S.V[static_cast<std::size_t>(i)], v);
          retained.push_back(std::move(v));
        }
        S.V.clear();
        S.W.clear();
        S.H = DenseMatrix(0, 0);
        for (Vector& v : retained)
          if (orthonormalize_against(converged, S.V, v))
            append_column(S, A, std::move(v), &mvp);
        while (S.dim() < 1) append_column(S, A, fresh_vector(), &mvp);
        break;
      }

      // Correction equation, identical in form to the Newton one.
      DeflationBasis Q = converged;
      Q.push(u);
      Vector rhs(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
      orthogonalize(Q, rhs);

      ProjectedJacobian J{A, theta, Q};
      PcgOutcome sol = solve_correction(
          J, rhs,
          [&](const Vector& g, Vector& c) {
            apply_preconditioner(window, F, Q, g, c);
          },
          pcg_cfg, u, &mvp, {&out.trace, level, outer});

      const double snorm = nrm2(sol.s);
      out.trace.corrections.push_back({level, outer, sol.exit_reason,
                                       sol.indefinite, sol.iterations, rnorm,
                                       0.0,
                                       snorm > 0.0 ? Q.max_overlap(sol.s) / snorm
                                                   : 0.0});
      if (cfg.bfgs_update_hook) window.push(sol.s, r);

      if (S.dim() == cfg.m_max) {
        // Restart to the m_min best Ritz vectors; the retained set includes
        // the current best, so theta is preserved across the restart.
        std::vector<index_t> keep;
        for (int c = 0; c < cfg.m_min; ++c) keep.push_back(c);
        compress(S, ritz.vectors, keep);
        ++out.restarts;
        out.max_restart_theta_jump =
            std::max(out.max_restart_theta_jump,
                     std::abs(symmetric_eigen(S.H).values[0] - theta));
      }

      Vector expansion = std::move(sol.s);
      if (!orthonormalize_against(converged, S.V, expansion))
        expansion = fresh_vector();  // correction collapsed; escape vector
      append_column(S, A, std::move(expansion), &mvp);
      ++outer;
    }
  }

  out.trace.newton_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  out.trace.newton_mvp = mvp.count;
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) {
                     return a.lambda < b.lambda;
                   });
  return out;
}

}  // namespace spdeig
