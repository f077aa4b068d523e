#include "spdeig/dacg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spdeig {

namespace {

// Smaller eigenvalue of the pencil [a b; b c] y = mu [1 e; e f] y and its
// eigenvector. Both matrices come from span{x, p} with unit x, so f - e^2 > 0
// away from the degenerate p ~ x case.
struct RayleighRitz2x2 {
  double mu = 0.0;
  double y1 = 1.0, y2 = 0.0;
  bool degenerate = false;
};

RayleighRitz2x2 line_search(double a, double b, double c, double e, double f) {
  RayleighRitz2x2 out;
  const double a2 = f - e * e;
  if (!(a2 > 1e-14 * f)) {
    out.degenerate = true;
    return out;
  }
  const double b2 = a * f + c - 2.0 * b * e;
  const double c2 = a * c - b * b;
  const double disc = std::max(b2 * b2 - 4.0 * a2 * c2, 0.0);
  out.mu = 2.0 * c2 / (b2 + std::sqrt(disc));  // smaller root, b2 > 0 for SPD

  // Null vector of [a-mu, b-mu e; b-mu e, c-mu f]; take the better row.
  const double r1a = b - out.mu * e, r1b = -(a - out.mu);
  const double r2a = c - out.mu * f, r2b = -(b - out.mu * e);
  if (std::abs(r1a) + std::abs(r1b) >= std::abs(r2a) + std::abs(r2b)) {
    out.y1 = r1a;
    out.y2 = r1b;
  } else {
    out.y1 = r2a;
    out.y2 = r2b;
  }
  if (out.y1 == 0.0 && out.y2 == 0.0) {
    out.degenerate = true;
    return out;
  }
  if (out.y1 < 0.0) {  // keep continuity with the current iterate
    out.y1 = -out.y1;
    out.y2 = -out.y2;
  }
  return out;
}

}  // namespace

DacgResult dacg_minimize(const SparseMatrix& A, const ICFactor& F,
                         const DeflationBasis& deflate, const Vector& x0,
                         const DacgConfig& cfg, MvpCounter* mvp,
                         ConvergenceTrace* trace, int level) {
  if (!(cfg.tau_dacg > 0.0 && cfg.tau_dacg <= 1.0))
    throw std::invalid_argument("dacg_minimize: tau_dacg out of (0,1]");
  if (static_cast<index_t>(x0.size()) != A.n)
    throw std::invalid_argument("dacg_minimize: dimension mismatch");

  Vector x = x0;
  if (orthogonalize(deflate, x).zero)
    throw std::domain_error("dacg_minimize: x0 lies in the deflated space");
  normalize(x);

  Vector ax = matvec(A, x, mvp);
  double theta = dot(x, ax);

  const std::size_t n = x.size();
  Vector g(n), z, p(n, 0.0), ap, g_prev;
  double rho_prev = 0.0;
  bool fresh_direction = true;

  DacgResult out;
  for (int l = 0; l < cfg.itmax_dacg; ++l) {
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = ax[i] - theta * x[i];
      g[i] = 2.0 * ri;
      rnorm += ri * ri;
    }
    rnorm = std::sqrt(rnorm);
    if (trace) trace->add(level, Phase::Dacg, 0, l, rnorm / theta, theta);
    if (rnorm <= cfg.tau_dacg * theta) {
      out.converged = true;
      break;
    }

    apply_p0(F, g, z);
    deflate.project_once(z);
    const double rho = dot(g, z);
    double beta = 0.0;
    if (!fresh_direction && rho_prev > 0.0) {
      if (cfg.beta == DacgBeta::FletcherReeves)
        beta = rho / rho_prev;
      else  // Polak-Ribiere, clamped at zero
        beta = std::max(0.0, (rho - dot(g_prev, z)) / rho_prev);
    }
    if (beta == 0.0)
      for (std::size_t i = 0; i < n; ++i) p[i] = -z[i];
    else
      for (std::size_t i = 0; i < n; ++i) p[i] = -z[i] + beta * p[i];
    if (cfg.beta == DacgBeta::PolakRibiere) g_prev = g;
    rho_prev = rho;
    fresh_direction = false;

    bool stepped = false;
    bool tried_steepest = beta == 0.0;
    for (int attempt = 0; attempt < 2 && !stepped; ++attempt) {
      ap = matvec(A, p, mvp);
      const RayleighRitz2x2 rr =
          line_search(theta, dot(x, ap), dot(p, ap), dot(x, p), dot(p, p));
      const bool descent = !rr.degenerate && rr.mu <= theta + 1e-14 * std::abs(theta);
      if (descent) {
        double norm2_new = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = rr.y1 * x[i] + rr.y2 * p[i];
          ax[i] = rr.y1 * ax[i] + rr.y2 * ap[i];
          norm2_new += x[i] * x[i];
        }
        const double inv = 1.0 / std::sqrt(norm2_new);
        for (std::size_t i = 0; i < n; ++i) {
          x[i] *= inv;
          ax[i] *= inv;
        }
        theta = dot(x, ax);
        stepped = true;
      } else if (tried_steepest) {
        break;
      } else {
        for (std::size_t i = 0; i < n; ++i) p[i] = -z[i];  // steepest restart
        tried_steepest = true;
      }
    }
    out.iterations = l + 1;
    if (!stepped) break;  // no descent even along -z: at the roundoff floor

    if ((l + 1) % cfg.restart_every == 0) {
      orthogonalize(deflate, x);
      normalize(x);
      ax = matvec(A, x, mvp);
      theta = dot(x, ax);
      fresh_direction = true;
    }
  }

  orthogonalize(deflate, x);
  normalize(x);
  const EigenResidual er = eigenresidual(A, x, mvp);
  out.u = std::move(x);
  out.theta = er.theta;
  out.rnorm = er.rnorm;
  out.converged = er.rnorm <= cfg.tau_dacg * er.theta;
  return out;
}

}  // namespace spdeig
