#include <doctest.h>

#include <cmath>

#include "spdeig/laplacian.hpp"
#include "spdeig/newton.hpp"
#include "spdeig/oracle.hpp"
#include "support/test_matrices.hpp"

using namespace spdeig;
using namespace spdeig::testing;

TEST_CASE("diagonal spectrum") {
  std::vector<double> d;
  for (int i = 1; i <= 10; ++i) d.push_back(static_cast<double>(i));
  SparseMatrix A = diag_matrix(d);
  SolverConfig cfg;
  cfg.n_eig = 3;
  SolveOutcome res = solve_leftmost(A, cfg);
  REQUIRE(res.all_converged);
  REQUIRE(res.pairs.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(res.pairs[j].lambda == doctest::Approx(j + 1.0).epsilon(1e-7));
    // vector is +-e_j
    CHECK(std::abs(res.pairs[j].vector[static_cast<std::size_t>(j)]) ==
          doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("grid eigenvalues match the dense oracle") {
  SparseMatrix A = generate_grid2d(12, 12);
  SolverConfig cfg;
  cfg.n_eig = 4;
  SolveOutcome res = solve_leftmost(A, cfg);
  REQUIRE(res.all_converged);
  DenseSpectrum sp = dense_eigen(A);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(res.pairs[j].lambda - sp.eigenvalues[j]) <=
          1e-7 * sp.eigenvalues[j]);
    CHECK(res.pairs[j].final_residual_rel <= cfg.tau);
  }
  CHECK(res.max_pair_overlap <= 1e-8);
  for (std::size_t j = 1; j < res.pairs.size(); ++j)
    CHECK(res.pairs[j].lambda >=
          res.pairs[j - 1].lambda * (1.0 - 1e-10));
}

TEST_CASE("a warm start at full accuracy needs zero newton iterations") {
  SparseMatrix A = generate_grid2d(8, 8);
  SolverConfig cfg;
  cfg.n_eig = 1;
  cfg.dacg.tau_dacg = 1e-12;  // DACG alone crosses the outer tolerance
  SolveOutcome res = solve_leftmost(A, cfg);
  REQUIRE(res.all_converged);
  CHECK(res.pairs[0].outer_its == 0);
}

TEST_CASE("outer iteration cap flags the level") {
  SparseMatrix A = generate_grid2d(9, 9);
  SolverConfig cfg;
  cfg.n_eig = 2;
  cfg.itmax = 1;
  cfg.pcg.itmax_pcg = 1;
  cfg.dacg.tau_dacg = 0.9;  // nearly raw start
  cfg.dacg.itmax_dacg = 2;
  SolveOutcome res = solve_leftmost(A, cfg);
  CHECK(!res.all_converged);
  bool any_failed = false;
  for (const EigenPair& p : res.pairs) any_failed = any_failed || !p.converged;
  CHECK(any_failed);
}

TEST_CASE("constant-vector deflation finds the positive graph spectrum") {
  SparseMatrix L = generate_graph_laplacian(60, 3, 13, 0.0);
  const double inv = 1.0 / std::sqrt(60.0);
  std::vector<Vector> deflation = {Vector(60, inv)};
  SolverConfig cfg;
  cfg.n_eig = 3;
  SolveOutcome res = solve_leftmost(L, cfg, deflation);
  REQUIRE(res.all_converged);
  DenseSpectrum sp = dense_eigen(L);
  // sp.eigenvalues[0] is the kernel; the solver must deliver 1..3.
  CHECK(std::abs(sp.eigenvalues[0]) <= 1e-9 * frobenius_norm(L));
  for (int j = 0; j < 3; ++j) {
    CHECK(res.pairs[j].lambda > 1e-8);
    CHECK(std::abs(res.pairs[j].lambda - sp.eigenvalues[j + 1]) <=
          1e-7 * sp.eigenvalues[j + 1]);
  }
}

TEST_CASE("runs are deterministic for a fixed seed") {
  SparseMatrix A = generate_grid2d(8, 8);
  SolverConfig cfg;
  cfg.n_eig = 2;
  SolveOutcome a = solve_leftmost(A, cfg);
  SolveOutcome b = solve_leftmost(A, cfg);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t j = 0; j < a.pairs.size(); ++j) {
    CHECK(a.pairs[j].lambda == b.pairs[j].lambda);  // bitwise
    CHECK(a.pairs[j].mvp_newton == b.pairs[j].mvp_newton);
  }
  CHECK(a.trace.mvp.count == b.trace.mvp.count);
}

TEST_CASE("observer sees every newton step with a consistent basis") {
  SparseMatrix A = generate_grid2d(8, 8);
  SolverConfig cfg;
  cfg.n_eig = 2;
  long long calls = 0;
  solve_leftmost(A, cfg, {}, [&](const NewtonStepView& view) {
    ++calls;
    CHECK(view.basis.size() == view.level);  // converged plus the iterate
    CHECK(view.k >= 0);
    CHECK(view.theta > 0.0);
    CHECK(nrm2(view.u) == doctest::Approx(1.0));
  });
  SolveOutcome res = solve_leftmost(A, cfg);
  CHECK(calls == res.trace.newton_outer_iterations);
}

TEST_CASE("comparison over k_max reuses seeds and reports totals") {
  SparseMatrix A = generate_grid2d(10, 10);
  SolverConfig cfg;
  cfg.n_eig = 3;
  std::vector<ComparisonRow> rows = run_comparison(A, cfg, {0, 5});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].k_max == 0);
  CHECK(rows[1].k_max == 5);
  CHECK(rows[0].converged);
  CHECK(rows[1].converged);
  // The DACG phase is independent of k_max: identical work.
  CHECK(rows[0].dacg_its == rows[1].dacg_its);
  CHECK(rows[0].mvp_dacg == rows[1].mvp_dacg);
  CHECK(rows[0].mvp_total == rows[0].mvp_dacg + rows[0].mvp_newton);

  SolverConfig fixed = cfg;
  fixed.k_max = 0;
  SolveOutcome ref = solve_leftmost(A, fixed);
  CHECK(rows[0].mvp_total == ref.trace.mvp.count);
}

TEST_CASE("pure dacg mode") {
  SparseMatrix A = generate_grid2d(8, 8);
  SolverConfig cfg;
  cfg.n_eig = 2;
  cfg.dacg.itmax_dacg = 20000;
  SolveOutcome res = solve_dacg_pure(A, cfg);
  REQUIRE(res.pairs.size() == 2);
  DenseSpectrum sp = dense_eigen(A);
  for (int j = 0; j < 2; ++j) {
    CHECK(res.pairs[j].converged);
    CHECK(std::abs(res.pairs[j].lambda - sp.eigenvalues[j]) <=
          1e-6 * sp.eigenvalues[j]);
    CHECK(res.pairs[j].outer_its == 0);
  }
  CHECK(res.trace.newton_mvp == 0);
}

TEST_CASE("config validation") {
  SparseMatrix A = generate_path1d(5);
  SolverConfig cfg;
  cfg.n_eig = 0;
  CHECK_THROWS_AS(solve_leftmost(A, cfg), std::invalid_argument);
  SparseMatrix bad = from_triplets(2, {{0, 0, -1.0}, {1, 1, 1.0}}, true);
  SolverConfig ok;
  CHECK_THROWS_AS(solve_leftmost(bad, ok), std::invalid_argument);
}
