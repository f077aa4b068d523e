#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdeig/report.hpp"

using namespace spdeig;

namespace {

ConvergenceTrace sample_trace() {
  ConvergenceTrace t;
  t.mvp.count = 3;
  t.add(1, Phase::Dacg, 0, 0, 0.5, 2.0);
  t.mvp.count = 7;
  t.add(1, Phase::Newton, 0, 1, 1e-3, 1.5);
  return t;
}

}  // namespace

TEST_CASE("trace csv schema and determinism") {
  const std::string a = format_trace_csv("dacg-newton", sample_trace());
  const std::string b = format_trace_csv("dacg-newton", sample_trace());
  CHECK(a == b);

  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# spdeig trace schema", 0) == 0);
  std::getline(in, line);
  CHECK(line ==
        "solver,level,phase,outer_iter,inner_iter,cumulative_mvp,"
        "eigenresidual_rel,theta");
  std::getline(in, line);
  CHECK(line == "dacg-newton,1,DACG,0,0,3,0.5,2");
  std::getline(in, line);
  CHECK(line == "dacg-newton,1,NEWTON,0,1,7,0.001,1.5");
}

TEST_CASE("summary csv keeps wall-clock columns last") {
  RunSummary s;
  s.solver = "jd";
  s.k_max = 5;
  s.n_eig = 2;
  s.converged_levels = 2;
  s.mvp_total = 41;
  s.total_cpu = 1.25;
  const std::string csv = format_summary_csv({s});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // schema comment
  std::getline(in, line);  // header
  CHECK(line.find("total_cpu_s") == line.size() - std::string("total_cpu_s").size());
  std::getline(in, line);
  CHECK(line.rfind("jd,5,2,2,", 0) == 0);
}

TEST_CASE("comparison table marks failed rows") {
  ComparisonRow ok;
  ok.k_max = 5;
  ok.converged = true;
  ComparisonRow bad;
  bad.k_max = 0;
  bad.converged = false;
  const std::string text = format_comparison_text({ok, bad});
  CHECK(text.find("no convergence") != std::string::npos);
  CHECK(text.find("\xE2\x80\xA1") != std::string::npos);
}

TEST_CASE("write_file round trip") {
  const std::string path = "report_test.txt";
  write_file(path, "hello\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  std::remove(path.c_str());
  CHECK(content == "hello\n");
  CHECK_THROWS_AS(write_file("no_such_dir/x.txt", "y"), std::runtime_error);
}
