#pragma once

#include "spdeig/bfgs.hpp"
#include "spdeig/dacg.hpp"
#include "spdeig/deflation.hpp"
#include "spdeig/ichol.hpp"
#include "spdeig/pcg.hpp"
#include "spdeig/trace.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace spdeig {

struct SolverConfig {
  int n_eig = 20;
  double tau = 1e-8;  // outer eigenresidual tolerance, relative to theta
  int itmax = 100;    // Newton iterations per level
  DacgConfig dacg;
  PcgConfig pcg;      // pcg.tau_outer is kept in sync with tau by the driver
  index_t lfil = 30;
  double tau_ic = 1e-2;
  index_t k_max = 10;  // BFGS restart window; 0 reproduces the fixed preconditioner
  std::uint64_t seed = 1234;
  bool keep_window_across_levels = false;
};

struct EigenPair {
  double lambda = 0.0;
  Vector vector;  // unit norm
  int level = 0;  // 1-based
  int outer_its = 0;
  int dacg_its = 0;
  long long mvp_dacg = 0;
  long long mvp_newton = 0;
  bool converged = true;
  double final_residual_rel = 0.0;
};

struct SolveOutcome {
  std::vector<EigenPair> pairs;  // ascending eigenvalues
  ConvergenceTrace trace;
  bool all_converged = true;
  double sigma_fill = 0.0;  // IC fill-in of the initial preconditioner
  double ic_shift = 0.0;
  bool ic_fell_back_to_diagonal = false;
  long long rejected_pairs = 0;
  double max_pair_overlap = 0.0;  // max |v_i'v_l| over accepted pairs
};

/// State handed to the observer at the start of every Newton iteration,
/// before the correction solve. References stay valid only for the call.
struct NewtonStepView {
  int level;
  int k;
  double theta;
  const Vector& u;
  const DeflationBasis& basis;  // Q = [converged eigenvectors, u]
  const BfgsWindow& window;
  const ICFactor& factor;
};

using NewtonObserver = std::function<void(const NewtonStepView&)>;

/// DACG-Newton driver: per level, a DACG warm start to tau_dacg, then
/// Newton iterations whose correction equations are solved by PCG under
/// the BFGS-updated preconditioner; each step pushes its (s, r) pair into
/// the window. initial_deflation seeds the converged basis with known
/// kernel vectors (e.g. the constant vector of a graph Laplacian) that are
/// not reported as eigenpairs.
SolveOutcome solve_leftmost(const SparseMatrix& A, const SolverConfig& cfg,
                            const std::vector<Vector>& initial_deflation = {},
                            const NewtonObserver& observer = {});

struct ComparisonRow {
  index_t k_max = 0;
  long long dacg_its = 0;
  double dacg_cpu = 0.0;
  long long outer_its = 0;
  long long mvp_newton = 0;
  double newton_cpu = 0.0;
  long long mvp_dacg = 0;
  long long mvp_total = 0;
  double total_cpu = 0.0;
  bool converged = true;  // false is rendered as the no-convergence marker
};

/// One solve_leftmost per k_max with identical seeds and initial vectors.
std::vector<ComparisonRow> run_comparison(const SparseMatrix& A,
                                          const SolverConfig& cfg,
                                          const std::vector<index_t>& kmax_list,
                                          const std::vector<Vector>& initial_deflation = {});

/// Pure DACG comparison mode: every level is run by DACG alone down to the
/// outer tolerance cfg.tau, no Newton phase.
SolveOutcome solve_dacg_pure(const SparseMatrix& A, const SolverConfig& cfg,
                             const std::vector<Vector>& initial_deflation = {});

}  // namespace spdeig
