// End-to-end checks of the command-line surface: exit codes, output files,
// determinism of the numeric CSV columns, and the seed override.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAILED: " << what << "\n";
  }
}

int run(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc < 0) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV without comment lines and without the trailing wall-clock columns.
std::string numeric_part(const std::string& csv, int clock_columns) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    int cut = 0;
    std::size_t pos = line.size();
    while (cut < clock_columns && pos != std::string::npos) {
      pos = line.find_last_of(',', pos == line.size() ? std::string::npos : pos - 1);
      ++cut;
    }
    out << line.substr(0, pos) << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: test_cli_integration <cli-path> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string scratch = argv[2];
  std::filesystem::remove_all(scratch);
  std::filesystem::create_directories(scratch);
  const std::string quiet = " > /dev/null 2>&1";

  expect(run(cli + quiet) == 1, "no arguments exits 1 with usage");
  expect(run(cli + " --no-such-flag" + quiet) == 1, "bad flag exits 1");
  expect(run(cli + " --matrix missing.mtx --generate grid2d:4" + quiet) == 1,
         "two sources rejected");
  expect(run(cli + " --matrix does_not_exist.mtx" + quiet) == 1,
         "missing file exits 1");

  const std::string out1 = scratch + "/run1";
  const std::string base_cmd = " --generate grid2d:12 --neig 3 --solver dacg-newton";
  expect(run(cli + base_cmd + " --outdir " + out1 + quiet) == 0,
         "grid run exits 0 on full convergence");
  expect(std::filesystem::exists(out1 + "/summary.csv"), "summary.csv written");
  expect(std::filesystem::exists(out1 + "/trace.csv"), "trace.csv written");
  expect(std::filesystem::exists(out1 + "/report.txt"), "report.txt written");
  {
    const std::string summary = slurp(out1 + "/summary.csv");
    expect(summary.find("dacg-newton") != std::string::npos, "solver column");
    // converged_levels column equals neig
    std::istringstream in(summary);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    std::istringstream row(line);
    std::string field;
    for (int i = 0; i < 4; ++i) std::getline(row, field, ',');
    expect(field == "3", "three converged levels, got " + field);
  }
  {
    // cumulative MVP nondecreasing in trace.csv
    std::istringstream in(slurp(out1 + "/trace.csv"));
    std::string line;
    long long prev = -1;
    bool monotone = true;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("solver", 0) == 0) continue;
      std::istringstream row(line);
      std::string field;
      for (int i = 0; i < 6; ++i) std::getline(row, field, ',');
      const long long mvp = std::stoll(field);
      monotone = monotone && mvp >= prev;
      prev = mvp;
    }
    expect(monotone, "trace cumulative_mvp nondecreasing");
  }

  // Determinism: identical runspec gives identical numeric columns.
  const std::string out2 = scratch + "/run2";
  expect(run(cli + base_cmd + " --outdir " + out2 + quiet) == 0, "repeat run");
  expect(numeric_part(slurp(out1 + "/summary.csv"), 3) ==
             numeric_part(slurp(out2 + "/summary.csv"), 3),
         "summary.csv numeric columns identical across reruns");

  // SPECTRA_SEED overrides --seed.
  const std::string out_env = scratch + "/run_env";
  const std::string out_seed = scratch + "/run_seed";
  expect(run("SPECTRA_SEED=777 " + cli + base_cmd + " --seed 1 --outdir " +
             out_env + quiet) == 0,
         "env-seed run");
  expect(run(cli + base_cmd + " --seed 777 --outdir " + out_seed + quiet) == 0,
         "flag-seed run");
  expect(numeric_part(slurp(out_env + "/summary.csv"), 3) ==
             numeric_part(slurp(out_seed + "/summary.csv"), 3),
         "SPECTRA_SEED overrides --seed");

  // k_max sweep writes one summary row per value plus the comparison table.
  const std::string out3 = scratch + "/sweep";
  expect(run(cli + " --generate grid2d:12 --neig 2 --kmax-sweep 0,1,5 --outdir " +
             out3 + quiet) == 0,
         "sweep run exits 0");
  {
    std::istringstream in(slurp(out3 + "/summary.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#' && line.rfind("solver", 0) != 0) ++rows;
    expect(rows == 3, "sweep summary has 3 rows");
    expect(slurp(out3 + "/report.txt").find("k_max comparison") !=
               std::string::npos,
           "sweep report holds the comparison table");
  }

  // Partial convergence reports exit code 2.
  expect(run(cli + " --generate grid2d:10 --neig 2 --itmax 1 --itmax-pcg 1"
                   " --tau-dacg 0.9 --itmax-dacg 2 --outdir " +
             scratch + "/partial" + quiet) == 2,
         "partial convergence exits 2");

  // Other solvers and the matrix export/ingest loop.
  expect(run(cli + " --generate grid2d:10 --neig 2 --solver jd --outdir " +
             scratch + "/jd" + quiet) == 0,
         "jd solver run");
  expect(run(cli + " --generate grid2d:8 --neig 1 --solver dacg-pure --outdir " +
             scratch + "/pure" + quiet) == 0,
         "dacg-pure run");
  const std::string mtx = scratch + "/exported.mtx";
  expect(run(cli + " --generate graph:60,3 --neig 2 --export-matrix " + mtx +
             " --outdir " + scratch + "/graph" + quiet) == 0,
         "graph run with export");
  expect(run(cli + " --matrix " + mtx + " --deflate-constant --neig 2 --outdir " +
             scratch + "/reload" + quiet) == 0,
         "exported matrix loads and solves");

  if (failures == 0) std::cout << "cli integration: all checks passed\n";
  return failures == 0 ? 0 : 1;
}
