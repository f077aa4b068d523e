#pragma once

#include "spdeig/deflation.hpp"
#include "spdeig/trace.hpp"

#include <functional>

namespace spdeig {

struct PcgConfig {
  double tau_pcg = 1e-2;      // relative residual exit
  int itmax_pcg = 20;
  double tau_outer = 1e-8;    // outer tolerance driving the eigenresidual exit
  int stagnation_window = 2;  // consecutive slow-decrease iterations before exit
  int eigcheck_stride = 1;    // evaluate the eigenresidual test every n-th iteration
};

struct PcgOutcome {
  Vector s;            // correction, orthogonal to the basis
  int iterations = 0;
  PcgExit exit_reason = PcgExit::MaxIt;
  bool indefinite = false;  // p'Jp <= 0 was hit; s is the last iterate
  /// (|g_l|, |r_l|) per iteration: linear residual and eigenresidual of the
  /// updated vector, for the convergence-profile figures.
  std::vector<std::pair<double, double>> history;
  double final_eigres_rel = 0.0;
  double ortho_drift = 0.0;  // max |Q'x|/|x| observed before reprojection
};

using PrecondFn = std::function<void(const Vector&, Vector&)>;

/// Context for appending per-iteration rows to a shared trace.
struct PcgTraceSink {
  ConvergenceTrace* trace = nullptr;
  int level = 0;
  int outer_iter = 0;
};

/// PCG on the projected correction equation J s = rhs with zero initial
/// guess. Exits on the first of: relative linear residual below tau_pcg;
/// eigenresidual of (u_k + s)/|u_k + s| below tau_outer (one extra counted
/// matvec per check); eigenresidual decreasing slower than the linear
/// residual for stagnation_window consecutive iterations; itmax_pcg.
/// rhs must be orthogonal to the deflation basis.
PcgOutcome solve_correction(const ProjectedJacobian& J, const Vector& rhs,
                            const PrecondFn& precond, const PcgConfig& cfg,
                            const Vector& u_k, MvpCounter* mvp,
                            const PcgTraceSink& sink = {});

}  // namespace spdeig
