// Command-line driver: matrix ingestion or generation, solver dispatch,
// CSV and report emission.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spdeig/jd.hpp"
#include "spdeig/laplacian.hpp"
#include "spdeig/matrix_market.hpp"
#include "spdeig/newton.hpp"
#include "spdeig/oracle.hpp"
#include "spdeig/report.hpp"

namespace {

using namespace spdeig;

Vector constant_vector(index_t n) {
  Vector v(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  return v;
}

RunSummary summarize(const std::string& solver, index_t k_max, int n_eig,
                     const SolveOutcome& res) {
  RunSummary s;
  s.solver = solver;
  s.k_max = k_max;
  s.n_eig = n_eig;
  for (const EigenPair& p : res.pairs) s.converged_levels += p.converged ? 1 : 0;
  s.dacg_its = res.trace.dacg_iterations;
  s.outer_its = res.trace.newton_outer_iterations;
  s.mvp_dacg = res.trace.dacg_mvp;
  s.mvp_newton = res.trace.newton_mvp;
  s.mvp_total = res.trace.mvp.count;
  s.sigma_fill = res.sigma_fill;
  s.dacg_cpu = res.trace.dacg_seconds;
  s.newton_cpu = res.trace.newton_seconds;
  s.total_cpu = res.trace.dacg_seconds + res.trace.newton_seconds;
  return s;
}

void append_exit_stats(std::ostringstream& rep, const ConvergenceTrace& trace) {
  std::map<std::string, int> counts;
  int indefinite = 0;
  for (const CorrectionRecord& c : trace.corrections) {
    ++counts[pcg_exit_name(c.exit_reason)];
    indefinite += c.indefinite ? 1 : 0;
  }
  rep << "PCG exit reasons:";
  if (counts.empty()) rep << " (no correction solves)";
  for (const auto& [name, cnt] : counts) rep << "  " << name << "=" << cnt;
  if (indefinite > 0) rep << "  indefinite-aborts=" << indefinite;
  rep << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spdeig: leftmost eigenpairs of sparse SPD matrices by a DACG-warmed\n"
      "Newton method with a BFGS-updated projected preconditioner, plus a\n"
      "Jacobi-Davidson baseline."};

  std::string matrix_path, generate_spec, outdir = ".", solver = "dacg-newton";
  std::string export_path;
  SolverConfig cfg;
  cfg.n_eig = 20;
  JdConfig jd_cfg;
  std::vector<index_t> kmax_sweep;
  double graph_eps = 0.0;
  bool deflate_constant = false;

  auto* source = app.add_option_group("matrix source", "exactly one required");
  source->add_option("--matrix", matrix_path,
                     "Matrix Market file (coordinate, real, symmetric)");
  source->add_option("--generate", generate_spec,
                     "generator spec: path1d:N | grid2d:NX[,NY] | "
                     "grid3d:NX[,NY,NZ] | graph:N[,CHORDS]");
  source->require_option(1);

  app.add_option("--solver", solver, "dacg-newton | jd | dacg-pure")
      ->check(CLI::IsMember({"dacg-newton", "jd", "dacg-pure"}));
  app.add_option("--neig", cfg.n_eig, "number of leftmost eigenpairs");
  app.add_option("--tau", cfg.tau, "outer eigenresidual tolerance");
  app.add_option("--itmax", cfg.itmax, "max outer iterations per level");
  app.add_option("--tau-dacg", cfg.dacg.tau_dacg, "DACG warm-start tolerance");
  app.add_option("--itmax-dacg", cfg.dacg.itmax_dacg, "max DACG iterations");
  app.add_option("--tau-pcg", cfg.pcg.tau_pcg, "PCG relative residual tolerance");
  app.add_option("--itmax-pcg", cfg.pcg.itmax_pcg, "max PCG iterations");
  app.add_option("--lfil", cfg.lfil, "IC fill per row");
  app.add_option("--tau-ic", cfg.tau_ic, "IC drop tolerance");
  app.add_option("--kmax", cfg.k_max, "BFGS window size (0 = fixed preconditioner)");
  app.add_option("--kmax-sweep", kmax_sweep,
                 "comma list of k_max values, one dacg-newton run each")
      ->delimiter(',');
  app.add_option("--m-min", jd_cfg.m_min, "JD subspace size after restart");
  app.add_option("--m-max", jd_cfg.m_max, "JD restart trigger");
  app.add_option("--seed", cfg.seed, "RNG seed (env SPECTRA_SEED overrides)");
  app.add_option("--outdir", outdir, "output directory");
  app.add_option("--graph-eps", graph_eps,
                 "diagonal shift for generated graph Laplacians (fallback to "
                 "constant-vector deflation)");
  app.add_flag("--deflate-constant", deflate_constant,
               "deflate the constant vector (graph Laplacian kernel)");
  app.add_option("--export-matrix", export_path,
                 "also write the matrix in Matrix Market format");

  if (argc <= 1) {
    std::cout << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (const char* env_seed = std::getenv("SPECTRA_SEED"))
      cfg.seed = std::strtoull(env_seed, nullptr, 10);

    SparseMatrix A;
    std::string matrix_name;
    if (!matrix_path.empty()) {
      A = load_matrix_market(matrix_path);
      matrix_name = matrix_path;
    } else {
      GeneratorSpec gen = generate_from_string(generate_spec, cfg.seed, graph_eps);
      A = std::move(gen.matrix);
      matrix_name = generate_spec;
      if (gen.deflate_constant) deflate_constant = true;
    }
    verify_structure(A);
    if (!export_path.empty()) save_matrix_market(export_path, A);

    std::vector<Vector> deflation;
    if (deflate_constant) deflation.push_back(constant_vector(A.n));

    std::filesystem::create_directories(outdir);
    const std::string summary_path = outdir + "/summary.csv";
    const std::string trace_path = outdir + "/trace.csv";
    const std::string report_path = outdir + "/report.txt";

    std::vector<RunSummary> summaries;
    std::ostringstream trace_csv, rep;
    bool all_converged = true;

    rep << "spdeig run report\n";
    rep << "matrix: " << matrix_name << "  n=" << A.n << "  nnz=" << A.nnz()
        << "\n";
    rep << "solver: " << solver << "  n_eig=" << cfg.n_eig << "  tau=" << cfg.tau
        << "  seed=" << cfg.seed << "\n";
    if (deflate_constant) rep << "constant vector deflated (graph kernel)\n";
    rep << "\n";

    jd_cfg.n_eig = cfg.n_eig;
    jd_cfg.tau = cfg.tau;
    jd_cfg.itmax = cfg.itmax;
    jd_cfg.pcg = cfg.pcg;
    jd_cfg.seed = cfg.seed;

    auto describe_run = [&](const SolveOutcome& res, const std::string& tag) {
      all_converged = all_converged && res.all_converged;
      rep << "[" << tag << "]\n";
      rep << "  IC fill-in sigma = " << res.sigma_fill;
      if (res.ic_shift > 0.0) rep << "  (diagonal shift " << res.ic_shift << ")";
      if (res.ic_fell_back_to_diagonal) rep << "  (diagonal fallback)";
      rep << "\n";
      rep << "  wall clock: DACG " << res.trace.dacg_seconds << " s, Newton "
          << res.trace.newton_seconds << " s\n";
      rep << "  MVP: DACG " << res.trace.dacg_mvp << ", Newton "
          << res.trace.newton_mvp << ", total " << res.trace.mvp.count << "\n";
      if (res.rejected_pairs > 0)
        rep << "  BFGS pairs rejected: " << res.rejected_pairs << "\n";
      if (res.trace.theta_increase_events > 0)
        rep << "  non-monotone Rayleigh quotient steps: "
            << res.trace.theta_increase_events << "\n";
      rep << "  max |Q's|/|s| over corrections: "
          << res.trace.max_correction_ortho_ratio << "\n";
      rep << "  max |v_i'v_l| over accepted pairs: " << res.max_pair_overlap
          << "\n";
      append_exit_stats(rep, res.trace);
      rep << format_pairs_text(res.pairs) << "\n";
    };

    if (solver == "dacg-newton" && kmax_sweep.size() > 1) {
      std::vector<ComparisonRow> rows;
      for (index_t km : kmax_sweep) {
        SolverConfig run_cfg = cfg;
        run_cfg.k_max = km;
        SolveOutcome res = solve_leftmost(A, run_cfg, deflation);
        const std::string tag = "dacg-newton-k" + std::to_string(km);
        summaries.push_back(summarize("dacg-newton", km, cfg.n_eig, res));
        trace_csv << format_trace_csv(tag, res.trace);
        describe_run(res, tag);
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
      rep << "k_max comparison:\n" << format_comparison_text(rows);
    } else if (solver == "dacg-newton") {
      if (kmax_sweep.size() == 1) cfg.k_max = kmax_sweep.front();
      SolveOutcome res = solve_leftmost(A, cfg, deflation);
      summaries.push_back(summarize(solver, cfg.k_max, cfg.n_eig, res));
      trace_csv << format_trace_csv(solver, res.trace);
      describe_run(res, solver);
    } else if (solver == "dacg-pure") {
      SolveOutcome res = solve_dacg_pure(A, cfg, deflation);
      summaries.push_back(summarize(solver, 0, cfg.n_eig, res));
      trace_csv << format_trace_csv(solver, res.trace);
      describe_run(res, solver);
    } else {  // jd
      ICFactor F = ic_factor(A, cfg.lfil, cfg.tau_ic);
      JdOutcome res = jd_solve(A, F, jd_cfg, deflation);
      all_converged = all_converged && res.all_converged;
      SolveOutcome shim;  // reuse the reporting path
      shim.pairs = res.pairs;
      shim.trace = std::move(res.trace);
      shim.all_converged = res.all_converged;
      shim.sigma_fill = F.fill_ratio;
      shim.ic_shift = F.shift_used;
      summaries.push_back(summarize(solver, 0, cfg.n_eig, shim));
      trace_csv << format_trace_csv(solver, shim.trace);
      describe_run(shim, solver);
      rep << "  JD restarts: " << res.restarts
          << ", max Ritz jump across restarts: " << res.max_restart_theta_jump
          << "\n";
    }

    write_file(summary_path, format_summary_csv(summaries));
    write_file(trace_path, trace_csv.str());
    write_file(report_path, rep.str());
    std::cout << rep.str();
    std::cout << "wrote " << summary_path << ", " << trace_path << ", "
              << report_path << "\n";
    return all_converged ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
