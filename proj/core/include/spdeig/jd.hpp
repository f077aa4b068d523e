#pragma once

#include "spdeig/dense.hpp"
#include "spdeig/ichol.hpp"
#include "spdeig/newton.hpp"
#include "spdeig/pcg.hpp"

namespace spdeig {

struct JdConfig {
  int m_min = 5;   // subspace size after a restart
  int m_max = 10;  // restart trigger
  int n_eig = 20;
  double tau = 1e-8;
  int itmax = 100;  // outer iterations per level
  PcgConfig pcg;
  std::uint64_t seed = 1234;
  /// Reserved hook: BFGS-update the projected preconditioner between outer
  /// iterations like the Newton driver does. Off by default; the shipped
  /// comparison keeps the initial preconditioner fixed.
  bool bfgs_update_hook = false;
  index_t k_max = 10;  // window capacity when the hook is enabled
};

/// Search subspace of the Rayleigh-Ritz extraction: orthonormal columns V
/// with W = A V carried alongside and H = V'AV.
struct RitzSubspace {
  std::vector<Vector> V;
  std::vector<Vector> W;
  DenseMatrix H;
  index_t dim() const { return static_cast<index_t>(V.size()); }
};

struct JdOutcome {
  std::vector<EigenPair> pairs;
  ConvergenceTrace trace;
  bool all_converged = true;
  int restarts = 0;
  double max_restart_theta_jump = 0.0;  // |theta before - after| across restarts
};

/// Jacobi-Davidson with Rayleigh-Ritz restarts. The correction equation is
/// the same projected system the Newton driver solves, handled by the same
/// PCG under the fixed projected initial preconditioner; outer and inner
/// exit tests match the DACG-Newton ones.
JdOutcome jd_solve(const SparseMatrix& A, const ICFactor& F, const JdConfig& cfg,
                   const std::vector<Vector>& initial_deflation = {});

}  // namespace spdeig
