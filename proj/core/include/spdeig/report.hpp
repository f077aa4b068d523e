#pragma once

#include "spdeig/newton.hpp"
#include "spdeig/trace.hpp"

#include <string>
#include <vector>

namespace spdeig {

/// One summary.csv row. Wall-clock columns sit last so diffs that should
/// ignore timing can cut them off cheaply.
struct RunSummary {
  std::string solver;  // dacg-newton | jd | dacg-pure
  index_t k_max = 0;
  int n_eig = 0;
  int converged_levels = 0;
  long long dacg_its = 0;
  long long outer_its = 0;
  long long mvp_dacg = 0;
  long long mvp_newton = 0;
  long long mvp_total = 0;
  double sigma_fill = 0.0;
  double dacg_cpu = 0.0;
  double newton_cpu = 0.0;
  double total_cpu = 0.0;
};

std::string format_trace_csv(const std::string& solver,
                             const ConvergenceTrace& trace);
std::string format_summary_csv(const std::vector<RunSummary>& rows);

/// Aligned text in the layout of the k_max comparison tables; rows that did
/// not converge carry the double-dagger marker.
std::string format_comparison_text(const std::vector<ComparisonRow>& rows);

std::string format_pairs_text(const std::vector<EigenPair>& pairs);

void write_file(const std::string& path, const std::string& content);

}  // namespace spdeig
