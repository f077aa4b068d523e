#include "spdeig/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spdeig {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string format_trace_csv(const std::string& solver,
                             const ConvergenceTrace& trace) {
  std::ostringstream out;
  out << "# spdeig trace schema 1\n";
  out << "solver,level,phase,outer_iter,inner_iter,cumulative_mvp,"
         "eigenresidual_rel,theta\n";
  for (const TraceRow& r : trace.rows)
    out << solver << ',' << r.level << ',' << phase_name(r.phase) << ','
        << r.outer_iter << ',' << r.inner_iter << ',' << r.cumulative_mvp << ','
        << num(r.eigenresidual_rel) << ',' << num(r.theta) << '\n';
  return out.str();
}

std::string format_summary_csv(const std::vector<RunSummary>& rows) {
  std::ostringstream out;
  out << "# spdeig summary schema 1 (wall-clock columns last)\n";
  out << "solver,k_max,n_eig,converged_levels,dacg_its,outer_its,mvp_dacg,"
         "mvp_newton,mvp_total,sigma,dacg_cpu_s,newton_cpu_s,total_cpu_s\n";
  for (const RunSummary& r : rows)
    out << r.solver << ',' << r.k_max << ',' << r.n_eig << ','
        << r.converged_levels << ',' << r.dacg_its << ',' << r.outer_its << ','
        << r.mvp_dacg << ',' << r.mvp_newton << ',' << r.mvp_total << ','
        << num(r.sigma_fill) << ',' << num(r.dacg_cpu) << ','
        << num(r.newton_cpu) << ',' << num(r.total_cpu) << '\n';
  return out.str();
}

std::string format_comparison_text(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "  k_max |  DACG its    CPU | outer its      MVP     CPU |  TOT MVP     CPU\n";
  out << "  ------+------------------+----------------------------+-----------------\n";
  char line[160];
  for (const ComparisonRow& r : rows) {
    if (r.converged) {
      std::snprintf(line, sizeof(line),
                    "  %5lld | %9lld %6.2f | %9lld %8lld %7.2f | %8lld %7.2f\n",
                    static_cast<long long>(r.k_max), r.dacg_its, r.dacg_cpu,
                    r.outer_its, r.mvp_newton, r.newton_cpu, r.mvp_total,
                    r.total_cpu);
    } else {
      // The dagger is three bytes but one column; widen the field by two.
      std::snprintf(line, sizeof(line),
                    "  %5lld | %9lld %6.2f | %11s %10s %9s | %8s %7s  (double-dagger: no convergence)\n",
                    static_cast<long long>(r.k_max), r.dacg_its, r.dacg_cpu,
                    "\xE2\x80\xA1", "\xE2\x80\xA1", "\xE2\x80\xA1", "--", "--");
    }
    out << line;
  }
  return out.str();
}

std::string format_pairs_text(const std::vector<EigenPair>& pairs) {
  std::ostringstream out;
  out << "    j          lambda    rel.residual  dacg_its  newton_its   MVP(dacg)  MVP(newton)\n";
  char line[200];
  for (const EigenPair& p : pairs) {
    std::snprintf(line, sizeof(line),
                  "  %3d %15.9e   %12.3e  %8d  %10d  %10lld  %11lld%s\n",
                  p.level, p.lambda, p.final_residual_rel, p.dacg_its,
                  p.outer_its, p.mvp_dacg, p.mvp_newton,
                  p.converged ? "" : "   [not converged]");
    out << line;
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace spdeig
