#include "spdeig/newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace spdeig {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t level_seed(std::uint64_t base, int level, int attempt) {
  std::uint64_t x = base ^ (static_cast<std::uint64_t>(level) * 0x9E3779B97F4A7C15ull);
  x += static_cast<std::uint64_t>(attempt) * 0x1000193ull;
  x ^= x >> 33;
  return x;
}

ICFactor build_initial_preconditioner(const SparseMatrix& A,
                                      const SolverConfig& cfg,
                                      SolveOutcome& out) {
  try {
    ICFactor F = ic_factor(A, cfg.lfil, cfg.tau_ic);
    out.sigma_fill = F.fill_ratio;
    out.ic_shift = F.shift_used;
    return F;
  } catch (const IcholBreakdown&) {
    std::cerr << "warning: incomplete Cholesky broke down, using the diagonal "
                 "preconditioner\n";
    out.ic_fell_back_to_diagonal = true;
    ICFactor F = diagonal_factor(A);
    out.sigma_fill = F.fill_ratio;
    return F;
  }
}

}  // namespace

SolveOutcome solve_leftmost(const SparseMatrix& A, const SolverConfig& cfg,
                            const std::vector<Vector>& initial_deflation,
                            const NewtonObserver& observer) {
  if (cfg.n_eig < 1) throw std::invalid_argument("solve_leftmost: n_eig >= 1 required");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("solve_leftmost: tau must be positive");
  if (!has_positive_diagonal(A))
    throw std::invalid_argument("solve_leftmost: matrix diagonal is not positive");

  SolveOutcome out;
  MvpCounter& mvp = out.trace.mvp;
  ICFactor F = build_initial_preconditioner(A, cfg, out);

  PcgConfig pcg_cfg = cfg.pcg;
  pcg_cfg.tau_outer = cfg.tau;

  DeflationBasis converged;  // Q~: seeded kernel vectors, then accepted pairs
  for (Vector v : initial_deflation) {
    if (orthogonalize(converged, v).zero)
      throw std::invalid_argument("solve_leftmost: dependent initial deflation vector");
    normalize(v);
    converged.push(std::move(v));
  }

  BfgsWindow window(cfg.k_max);

  for (int level = 1; level <= cfg.n_eig; ++level) {
    for (int attempt = 0;; ++attempt) {
      if (!cfg.keep_window_across_levels || attempt > 0) window.clear();

      // DACG warm start.
      const auto dacg_t0 = Clock::now();
      const long long mvp0 = mvp.count;
      Vector x0;
      for (int draw = 0;; ++draw) {
        x0 = random_vector(static_cast<std::size_t>(A.n),
                           level_seed(cfg.seed, level, attempt) + draw);
        if (!orthogonalize(converged, x0).zero) break;
      }
      DacgResult warm = dacg_minimize(A, F, converged, x0, cfg.dacg, &mvp,
                                      &out.trace, level);
      const long long mvp_dacg = mvp.count - mvp0;
      const double dacg_sec = seconds_since(dacg_t0);
      out.trace.dacg_seconds += dacg_sec;
      out.trace.dacg_mvp += mvp_dacg;
      out.trace.dacg_iterations += warm.iterations;

      // Newton loop on this level.
      const auto newton_t0 = Clock::now();
      const long long mvp1 = mvp.count;
      Vector u = std::move(warm.u);
      DeflationBasis Q = converged;
      Q.push(u);

      EigenResidual er = eigenresidual(A, u, &mvp);
      double theta = er.theta;
      double rnorm = er.rnorm;
      int k = 0;
      bool stuck = false;
      while (rnorm > cfg.tau * theta && k < cfg.itmax && !stuck) {
        if (observer) observer({level, k, theta, u, Q, window, F});

        Vector rhs(er.r.size());
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -er.r[i];
        if (orthogonalize(Q, rhs).zero) {
          stuck = true;  // residual lies in span(Q); no correction possible
          break;
        }

        ProjectedJacobian J{A, theta, Q};
        PcgOutcome sol = solve_correction(
            J, rhs,
            [&](const Vector& g, Vector& c) {
              apply_preconditioner(window, F, Q, g, c);
            },
            pcg_cfg, u, &mvp, {&out.trace, level, k});

        const double snorm = nrm2(sol.s);
        const double ortho_ratio =
            snorm > 0.0 ? Q.max_overlap(sol.s) / snorm : 0.0;
        out.trace.max_correction_ortho_ratio =
            std::max(out.trace.max_correction_ortho_ratio, ortho_ratio);

        if (snorm == 0.0) {
          stuck = true;  // PCG made no progress at all
          break;
        }

        Vector u_next = u;
        axpy(1.0, sol.s, u_next);
        normalize(u_next);
        orthogonalize(converged, u_next);  // drift control against Q~
        normalize(u_next);

        window.push(sol.s, er.r);

        u = std::move(u_next);
        Q.set_last(u);
        er = eigenresidual(A, u, &mvp);
        if (er.theta > theta + 10.0 * cfg.tau * theta)
          ++out.trace.theta_increase_events;

        out.trace.corrections.push_back({level, k, sol.exit_reason,
                                         sol.indefinite, sol.iterations, rnorm,
                                         er.rnorm, ortho_ratio});
        theta = er.theta;
        rnorm = er.rnorm;
        ++k;
      }

      const bool level_converged = rnorm <= cfg.tau * theta;
      out.trace.newton_seconds += seconds_since(newton_t0);
      out.trace.newton_mvp += mvp.count - mvp1;
      out.trace.newton_outer_iterations += k;

      // Duplicate-convergence guard: identical Rayleigh quotient and a
      // parallel vector mean the level collapsed onto an accepted pair.
      bool duplicate = false;
      for (const EigenPair& prev : out.pairs)
        if (std::abs(theta - prev.lambda) < 1e-12 * std::abs(prev.lambda) &&
            std::abs(dot(u, prev.vector)) > 0.99)
          duplicate = true;
      if (duplicate && attempt < 3) continue;  // fresh seed, rerun the level

      EigenPair pair;
      pair.lambda = theta;
      pair.vector = u;
      pair.level = level;
      pair.outer_its = k;
      pair.dacg_its = warm.iterations;
      pair.mvp_dacg = mvp_dacg;
      pair.mvp_newton = mvp.count - mvp1;
      pair.converged = level_converged;
      pair.final_residual_rel = rnorm / theta;
      out.pairs.push_back(std::move(pair));
      out.all_converged = out.all_converged && level_converged;

      converged.push(u);
      break;
    }
  }

  out.rejected_pairs = window.rejected();
  for (std::size_t i = 0; i < out.pairs.size(); ++i)
    for (std::size_t l = i + 1; l < out.pairs.size(); ++l)
      out.max_pair_overlap =
          std::max(out.max_pair_overlap,
                   std::abs(dot(out.pairs[i].vector, out.pairs[l].vector)));

  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) {
                     return a.lambda < b.lambda;
                   });
  return out;
}

SolveOutcome solve_dacg_pure(const SparseMatrix& A, const SolverConfig& cfg,
                             const std::vector<Vector>& initial_deflation) {
  if (cfg.n_eig < 1) throw std::invalid_argument("solve_dacg_pure: n_eig >= 1 required");
  if (!has_positive_diagonal(A))
    throw std::invalid_argument("solve_dacg_pure: matrix diagonal is not positive");

  SolveOutcome out;
  MvpCounter& mvp = out.trace.mvp;
  ICFactor F = build_initial_preconditioner(A, cfg, out);

  DacgConfig deep = cfg.dacg;
  deep.tau_dacg = cfg.tau;  // full accuracy, no Newton phase behind it

  DeflationBasis converged;
  for (Vector v : initial_deflation) {
    if (orthogonalize(converged, v).zero)
      throw std::invalid_argument("solve_dacg_pure: dependent initial deflation vector");
    normalize(v);
    converged.push(std::move(v));
  }

  for (int level = 1; level <= cfg.n_eig; ++level) {
    const auto t0 = Clock::now();
    const long long mvp0 = mvp.count;
    Vector x0;
    for (int draw = 0;; ++draw) {
      x0 = random_vector(static_cast<std::size_t>(A.n),
                         level_seed(cfg.seed, level, 0) + draw);
      if (!orthogonalize(converged, x0).zero) break;
    }
    DacgResult res = dacg_minimize(A, F, converged, x0, deep, &mvp, &out.trace, level);
    out.trace.dacg_seconds += seconds_since(t0);
    out.trace.dacg_mvp += mvp.count - mvp0;
    out.trace.dacg_iterations += res.iterations;

    EigenPair pair;
    pair.lambda = res.theta;
    pair.vector = res.u;
    pair.level = level;
    pair.dacg_its = res.iterations;
    pair.mvp_dacg = mvp.count - mvp0;
    pair.converged = res.converged;
    pair.final_residual_rel = res.rnorm / res.theta;
    out.all_converged = out.all_converged && res.converged;
    converged.push(std::move(res.u));
    out.pairs.push_back(std::move(pair));
  }

  for (std::size_t i = 0; i < out.pairs.size(); ++i)
    for (std::size_t l = i + 1; l < out.pairs.size(); ++l)
      out.max_pair_overlap =
          std::max(out.max_pair_overlap,
                   std::abs(dot(out.pairs[i].vector, out.pairs[l].vector)));
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) {
                     return a.lambda < b.lambda;
                   });
  return out;
}

std::vector<ComparisonRow> run_comparison(const SparseMatrix& A,
                                          const SolverConfig& cfg,
                                          const std::vector<index_t>& kmax_list,
                                          const std::vector<Vector>& initial_deflation) {
  std::vector<ComparisonRow> rows;
  rows.reserve(kmax_list.size());
  for (index_t km : kmax_list) {
    SolverConfig run_cfg = cfg;
    run_cfg.k_max = km;
    SolveOutcome res = solve_leftmost(A, run_cfg, initial_deflation);
    ComparisonRow row;
    row.k_max = km;
    row.dacg_its = res.trace.dacg_iterations;
    row.dacg_cpu = res.trace.dacg_seconds;
    row.outer_its = res.trace.newton_outer_iterations;
    row.mvp_newton = res.trace.newton_mvp;
    row.newton_cpu = res.trace.newton_seconds;
    row.mvp_dacg = res.trace.dacg_mvp;
    row.mvp_total = res.trace.mvp.count;
    row.total_cpu = res.trace.dacg_seconds + res.trace.newton_seconds;
    row.converged = res.all_converged;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spdeig
