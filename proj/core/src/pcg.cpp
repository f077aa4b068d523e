#include "spdeig/pcg.hpp"

#include <cmath>
#include <stdexcept>

namespace spdeig {

const char* phase_name(Phase p) { return p == Phase::Dacg ? "DACG" : "NEWTON"; }

const char* pcg_exit_name(PcgExit e) {
  switch (e) {
    case PcgExit::LinearTol: return "linear-tol";
    case PcgExit::EigenTol: return "eigen-tol";
    case PcgExit::Stagnation: return "stagnation";
    case PcgExit::MaxIt: return "maxit";
  }
  return "?";
}

PcgOutcome solve_correction(const ProjectedJacobian& J, const Vector& rhs,
                            const PrecondFn& precond, const PcgConfig& cfg,
                            const Vector& u_k, MvpCounter* mvp,
                            const PcgTraceSink& sink) {
  if (rhs.size() != static_cast<std::size_t>(J.A.n))
    throw std::invalid_argument("solve_correction: dimension mismatch");
  if (!(cfg.tau_pcg > 0.0 && cfg.tau_pcg < 1.0))
    throw std::invalid_argument("solve_correction: tau_pcg out of (0,1)");
  if (cfg.itmax_pcg < 1)
    throw std::invalid_argument("solve_correction: itmax_pcg must be >= 1");

  PcgOutcome out;
  out.s.assign(rhs.size(), 0.0);
  const double rhs_norm = nrm2(rhs);
  if (rhs_norm == 0.0) {
    out.exit_reason = PcgExit::LinearTol;
    return out;
  }

  Vector g = rhs;  // linear residual, x0 = 0
  Vector z;
  precond(g, z);
  double rho = dot(g, z);  // zeta_l, the SPD witness
  if (!(rho > 0.0)) {
    out.indefinite = true;
    return out;
  }
  Vector p = z;
  Vector q, trial;

  double prev_gnorm = rhs_norm;
  double prev_rnorm = -1.0;
  int slow_count = 0;

  for (int l = 1; l <= cfg.itmax_pcg; ++l) {
    J.apply(p, q, mvp);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      out.indefinite = true;
      // Negative curvature before any progress: fall back to the
      // preconditioned residual so the caller still gets a usable step.
      if (l == 1) out.s = p;
      break;
    }
    const double alpha = rho / pq;
    axpy(alpha, p, out.s);
    axpy(-alpha, q, g);
    out.iterations = l;
    const double gnorm = nrm2(g);

    // Keep the iterate in the orthogonal complement; roundoff drifts it out.
    const double xnorm = nrm2(out.s);
    if (xnorm > 0.0 && !J.basis.empty()) {
      const double drift = J.basis.max_overlap(out.s) / xnorm;
      out.ortho_drift = std::max(out.ortho_drift, drift);
      if (drift > 1e-10) {
        J.basis.project_once(out.s);
        J.basis.project_once(g);
        J.basis.project_once(p);
      }
    }

    // Eigenresidual of the would-be next iterate (u_k + s); one extra
    // counted matvec per evaluation.
    double rnorm = prev_rnorm, theta_trial = 0.0;
    const bool checked = (l % cfg.eigcheck_stride) == 0;
    if (checked) {
      trial = u_k;
      axpy(1.0, out.s, trial);
      const EigenResidual er = eigenresidual(J.A, trial, mvp);
      rnorm = er.rnorm;
      theta_trial = er.theta;
      out.final_eigres_rel = rnorm / theta_trial;
      out.history.push_back({gnorm, rnorm});
      if (sink.trace)
        sink.trace->add(sink.level, Phase::Newton, sink.outer_iter, l,
                        rnorm / theta_trial, theta_trial);
    }

    if (gnorm <= cfg.tau_pcg * rhs_norm) {
      out.exit_reason = PcgExit::LinearTol;
      return out;
    }
    if (checked && rnorm < cfg.tau_outer * theta_trial) {
      out.exit_reason = PcgExit::EigenTol;
      return out;
    }
    if (checked && prev_rnorm >= 0.0) {
      const double rho_ratio = rnorm / prev_rnorm;
      const double gamma_ratio = gnorm / prev_gnorm;
      if (rho_ratio > 1.0 || rho_ratio > gamma_ratio) ++slow_count;
      else slow_count = 0;
      if (slow_count >= cfg.stagnation_window) {
        out.exit_reason = PcgExit::Stagnation;
        return out;
      }
    }
    if (checked) {
      prev_rnorm = rnorm;
      prev_gnorm = gnorm;
    }

    precond(g, z);
    const double rho_next = dot(g, z);
    if (!(rho_next > 0.0)) {
      out.indefinite = true;
      break;
    }
    const double beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }

  out.exit_reason = PcgExit::MaxIt;
  return out;
}

}  // namespace spdeig
