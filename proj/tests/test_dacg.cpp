#include <doctest.h>

#include <cmath>

#include "spdeig/dacg.hpp"
#include "spdeig/laplacian.hpp"
#include "spdeig/oracle.hpp"
#include "support/test_matrices.hpp"

using namespace spdeig;
using namespace spdeig::testing;

TEST_CASE("exact eigenvector start converges in zero iterations") {
  SparseMatrix D = diag_matrix({1.0, 2.0, 3.0});
  ICFactor F = ic_factor(D, 3, 0.0);
  DeflationBasis none;
  DacgResult res = dacg_minimize(D, F, none, {1.0, 0.0, 0.0}, {});
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK(res.theta == doctest::Approx(1.0));
}

TEST_CASE("deflation retargets the minimization to the next eigenvalue") {
  SparseMatrix D = diag_matrix({1.0, 2.0, 3.0});
  ICFactor F = ic_factor(D, 3, 0.0);
  DeflationBasis deflate;
  deflate.push({1.0, 0.0, 0.0});
  DacgConfig cfg;
  cfg.tau_dacg = 1e-2;
  DacgResult res = dacg_minimize(D, F, deflate, {0.0, 0.7, 0.7}, cfg);
  CHECK(res.converged);
  CHECK(std::abs(res.theta - 2.0) <= 2.0 * cfg.tau_dacg * res.theta);
  CHECK(deflate.max_overlap(res.u) <= 1e-10);
  // The quotient cannot dip below the smallest eigenvalue of the complement.
  CHECK(res.theta >= 2.0 - 1e-10);
}

TEST_CASE("warm start lands within the gap on a grid laplacian") {
  SparseMatrix A = generate_grid2d(10, 10);
  ICFactor F = ic_factor(A, 30, 1e-2);
  DeflationBasis none;
  DacgConfig cfg;
  cfg.tau_dacg = 1e-2;
  MvpCounter mvp;
  DacgResult res =
      dacg_minimize(A, F, none, random_vector(100, 41), cfg, &mvp);
  REQUIRE(res.converged);
  DenseSpectrum sp = dense_eigen(A);
  const double gap = sp.eigenvalues[1] - sp.eigenvalues[0];
  CHECK((res.theta - sp.eigenvalues[0]) / gap <= 0.01);
  CHECK(mvp.count >= res.iterations);  // one product per iteration plus refreshes
}

TEST_CASE("rayleigh quotient is monotone along the iteration") {
  SparseMatrix A = generate_grid2d(8, 8);
  ICFactor F = ic_factor(A, 8, 1e-2);
  DeflationBasis none;
  ConvergenceTrace trace;
  DacgConfig cfg;
  cfg.tau_dacg = 1e-6;
  dacg_minimize(A, F, none, random_vector(64, 43), cfg, &trace.mvp, &trace, 1);
  REQUIRE(trace.rows.size() > 2);
  for (std::size_t i = 1; i < trace.rows.size(); ++i)
    CHECK(trace.rows[i].theta <=
          trace.rows[i - 1].theta + 1e-14 * std::abs(trace.rows[i - 1].theta));
}

TEST_CASE("polak-ribiere beta converges too") {
  SparseMatrix A = generate_grid2d(8, 8);
  ICFactor F = ic_factor(A, 8, 1e-2);
  DeflationBasis none;
  DacgConfig cfg;
  cfg.tau_dacg = 1e-4;
  cfg.beta = DacgBeta::PolakRibiere;
  DacgResult res = dacg_minimize(A, F, none, random_vector(64, 51), cfg);
  REQUIRE(res.converged);
  DenseSpectrum sp = dense_eigen(A);
  CHECK(std::abs(res.theta - sp.eigenvalues[0]) <= 1e-4 * sp.eigenvalues[0]);
}

TEST_CASE("itmax returns the best iterate with the flag down") {
  SparseMatrix A = generate_grid2d(12, 12);
  ICFactor F = diagonal_factor(A);  // weak preconditioner: forces many iterations
  DeflationBasis none;
  DacgConfig cfg;
  cfg.tau_dacg = 1e-10;
  cfg.itmax_dacg = 3;
  DacgResult res = dacg_minimize(A, F, none, random_vector(144, 47), cfg);
  CHECK(!res.converged);
  CHECK(res.iterations == 3);
  CHECK(nrm2(res.u) == doctest::Approx(1.0));
}

TEST_CASE("input contract violations") {
  SparseMatrix D = diag_matrix({1.0, 2.0});
  ICFactor F = ic_factor(D, 2, 0.0);
  DeflationBasis deflate;
  deflate.push({1.0, 0.0});
  CHECK_THROWS_AS(dacg_minimize(D, F, deflate, {1.0, 0.0}, {}),
                  std::domain_error);
  DacgConfig bad;
  bad.tau_dacg = 0.0;
  DeflationBasis none;
  CHECK_THROWS_AS(dacg_minimize(D, F, none, {1.0, 0.0}, bad),
                  std::invalid_argument);
}
