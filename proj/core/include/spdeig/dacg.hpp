#pragma once

#include "spdeig/deflation.hpp"
#include "spdeig/ichol.hpp"
#include "spdeig/trace.hpp"

namespace spdeig {

enum class DacgBeta { FletcherReeves, PolakRibiere };

struct DacgConfig {
  double tau_dacg = 1e-2;  // relative eigenresidual target of the warm start
  int itmax_dacg = 5000;
  int restart_every = 50;  // CG direction reset interval
  DacgBeta beta = DacgBeta::FletcherReeves;
};

struct DacgResult {
  Vector u;            // unit norm, orthogonal to the deflated space
  double theta = 0.0;  // Rayleigh quotient at exit
  double rnorm = 0.0;  // |Au - theta u| at exit
  int iterations = 0;
  bool converged = false;  // false: itmax hit, best iterate returned
};

/// Preconditioned nonlinear CG minimization of the Rayleigh quotient over
/// the complement of the deflated space: Fletcher-Reeves beta, exact
/// Rayleigh-Ritz line search on span{x, p} (the smaller root of the 2x2
/// pencil), direction restart on the configured interval or on non-descent.
/// One matvec per iteration; A x is carried incrementally and refreshed at
/// every restart.
DacgResult dacg_minimize(const SparseMatrix& A, const ICFactor& F,
                         const DeflationBasis& deflate, const Vector& x0,
                         const DacgConfig& cfg, MvpCounter* mvp = nullptr,
                         ConvergenceTrace* trace = nullptr, int level = 0);

}  // namespace spdeig
