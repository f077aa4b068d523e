#pragma once

#include "spdeig/sparse.hpp"

#include <string>
#include <vector>

namespace spdeig {

enum class Phase { Dacg, Newton };

const char* phase_name(Phase p);

/// One convergence-history record. The rows power the trace CSV and the
/// residual-vs-iteration figures.
struct TraceRow {
  int level = 0;       // eigenpair index j, 1-based
  Phase phase = Phase::Dacg;
  int outer_iter = 0;  // Newton iteration k (0 for DACG rows)
  int inner_iter = 0;  // PCG iteration l, or DACG iteration
  long long cumulative_mvp = 0;
  double eigenresidual_rel = 0.0;  // |Au - theta u| / theta of the running estimate
  double theta = 0.0;
};

enum class PcgExit { LinearTol, EigenTol, Stagnation, MaxIt };

const char* pcg_exit_name(PcgExit e);

/// Outcome of one correction-equation solve, kept for the exit-strategy
/// reporting: which test fired and whether the outer step still improved.
struct CorrectionRecord {
  int level = 0;
  int outer_iter = 0;
  PcgExit exit_reason = PcgExit::LinearTol;
  bool indefinite = false;
  int iterations = 0;
  double rnorm_before = 0.0;  // eigenresidual entering the solve
  double rnorm_after = 0.0;   // eigenresidual of the updated iterate
  double ortho_ratio = 0.0;   // |Q's| / |s| of the returned correction
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;
  std::vector<CorrectionRecord> corrections;
  MvpCounter mvp;
  double dacg_seconds = 0.0;
  double newton_seconds = 0.0;
  long long dacg_mvp = 0;
  long long newton_mvp = 0;
  long long dacg_iterations = 0;
  long long newton_outer_iterations = 0;
  double max_correction_ortho_ratio = 0.0;  // worst |Q's|/|s| seen
  long long theta_increase_events = 0;      // non-monotone Rayleigh quotient steps

  void add(int level, Phase phase, int outer, int inner, double rel_res,
           double theta) {
    rows.push_back({level, phase, outer, inner, mvp.count, rel_res, theta});
  }
};

}  // namespace spdeig
