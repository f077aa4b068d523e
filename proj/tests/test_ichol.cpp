#include <doctest.h>

#include <cmath>

#include "spdeig/ichol.hpp"
#include "spdeig/laplacian.hpp"
#include "support/test_matrices.hpp"

using namespace spdeig;
using namespace spdeig::testing;

namespace {

// |L L' - A|_F via dense assembly of the factor.
double factorization_error(const ICFactor& F, const SparseMatrix& A) {
  DenseMatrix L = dense_from_sparse(F.L);
  DenseMatrix AD = dense_from_sparse(A);
  const index_t n = A.n;
  double err = 0.0;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) {
      double llt = 0.0;
      for (index_t k = 0; k < n; ++k) llt += L(i, k) * L(j, k);
      const double d = llt - AD(i, j);
      err += d * d;
    }
  return std::sqrt(err);
}

}  // namespace

TEST_CASE("identity and diagonal factors") {
  SparseMatrix I = diag_matrix({1.0, 1.0, 1.0, 1.0});
  ICFactor F = ic_factor(I, 10, 0.0);
  CHECK(F.fill_ratio == doctest::Approx(1.0));
  CHECK(F.shift_used == 0.0);
  CHECK(factorization_error(F, I) <= 1e-14);

  SparseMatrix D = diag_matrix({4.0, 9.0, 16.0});
  F = ic_factor(D, 10, 0.0);
  for (index_t i = 0; i < 3; ++i)
    CHECK(F.L.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::sqrt(D.diag(i))));
}

TEST_CASE("complete factorization matches dense Cholesky") {
  SparseMatrix T = generate_path1d(5);
  ICFactor F = ic_factor(T, 5, 0.0);
  CHECK(factorization_error(F, T) <= 1e-12);

  SparseMatrix A = random_spd(25, 0.3, 11);
  F = ic_factor(A, 25, 0.0);
  CHECK(factorization_error(F, A) <= 1e-12 * frobenius_norm(A));
}

TEST_CASE("apply_p0 solves L L' c = g") {
  SparseMatrix I = diag_matrix({1.0, 1.0, 1.0});
  ICFactor F = ic_factor(I, 5, 0.0);
  Vector g = {1.5, -2.0, 0.25};
  CHECK(max_abs_diff(apply_p0(F, g), g) == 0.0);

  SparseMatrix D4 = diag_matrix({4.0});
  F = ic_factor(D4, 5, 0.0);
  CHECK(apply_p0(F, {8.0})[0] == doctest::Approx(2.0));

  SparseMatrix T = generate_path1d(5);
  F = ic_factor(T, 5, 0.0);
  g = random_vector(5, 3);
  Vector ref = dense_spd_solve(dense_from_sparse(T), g);
  CHECK(max_abs_diff(apply_p0(F, g), ref) <= 1e-10);

  CHECK_THROWS_AS(apply_p0(F, Vector(4, 1.0)), std::invalid_argument);
}

TEST_CASE("preconditioner is SPD as an operator") {
  SparseMatrix A = generate_grid2d(7, 7);
  for (index_t lfil : {index_t{0}, index_t{2}, index_t{49}}) {
    ICFactor F = ic_factor(A, lfil, 1e-2);
    for (std::uint64_t s = 0; s < 25; ++s) {
      Vector g = random_vector(49, 400 + s);
      CHECK(dot(g, apply_p0(F, g)) > 0.0);
    }
  }
}

TEST_CASE("fill ratio is nondecreasing in lfil") {
  SparseMatrix A = generate_grid2d(8, 8);
  double prev = 0.0;
  for (index_t lfil : {index_t{0}, index_t{1}, index_t{2}, index_t{4},
                       index_t{8}, index_t{64}}) {
    ICFactor F = ic_factor(A, lfil, 1e-3);
    CHECK(F.fill_ratio >= prev);
    prev = F.fill_ratio;
  }
}

TEST_CASE("per-row fill stays within the lfil budget") {
  SparseMatrix A = random_spd(40, 0.4, 23);
  const index_t lfil = 3;
  ICFactor F = ic_factor(A, lfil, 0.0);
  for (index_t i = 0; i < F.L.n; ++i) {
    const index_t row_nnz = F.L.row_ptr[i + 1] - F.L.row_ptr[i];
    CHECK(row_nnz <= lfil + 1);  // diagonal excluded from the budget
    const index_t a_row = A.row_ptr[i + 1] - A.row_ptr[i];
    CHECK(row_nnz <= lfil + a_row);
  }
}

TEST_CASE("breakdown restarts with a diagonal shift") {
  // Indefinite with positive diagonal: the (2,2) pivot of plain Cholesky
  // is 1 - 4 < 0, so the factorization must shift and retry.
  SparseMatrix B = from_triplets(2, {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 2.0}}, true);
  ICFactor F = ic_factor(B, 2, 0.0);
  CHECK(F.shift_used > 0.0);
  Vector g = {1.0, -1.0};
  CHECK(dot(g, apply_p0(F, g)) > 0.0);
}

TEST_CASE("diagonal fallback factor") {
  SparseMatrix A = generate_grid2d(4, 4);
  ICFactor F = diagonal_factor(A);
  CHECK(F.L.nnz() == A.n);
  Vector g = random_vector(16, 9);
  Vector c = apply_p0(F, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(c[i] == doctest::Approx(g[i] / 4.0));
}

TEST_CASE("parameter validation") {
  SparseMatrix A = generate_path1d(4);
  CHECK_THROWS_AS(ic_factor(A, -1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ic_factor(A, 2, -0.5), std::invalid_argument);
}
