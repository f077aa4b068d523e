#include <benchmark/benchmark.h>

#include "spdeig/bfgs.hpp"
#include "spdeig/ichol.hpp"
#include "spdeig/laplacian.hpp"
#include "spdeig/newton.hpp"
#include "spdeig/pcg.hpp"

namespace {

using namespace spdeig;

void BM_matvec(benchmark::State& state) {
  const index_t k = state.range(0);
  SparseMatrix A = generate_grid2d(k, k);
  Vector x = random_vector(static_cast<std::size_t>(A.n), 1), y;
  for (auto _ : state) {
    matvec(A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * A.nnz());
}
BENCHMARK(BM_matvec)->Arg(32)->Arg(64)->Arg(128);

void BM_ic_factor(benchmark::State& state) {
  const index_t k = state.range(0);
  SparseMatrix A = generate_grid2d(k, k);
  for (auto _ : state) {
    ICFactor F = ic_factor(A, 30, 1e-2);
    benchmark::DoNotOptimize(F.fill_ratio);
  }
}
BENCHMARK(BM_ic_factor)->Arg(32)->Arg(64);

void BM_apply_p0(benchmark::State& state) {
  const index_t k = state.range(0);
  SparseMatrix A = generate_grid2d(k, k);
  ICFactor F = ic_factor(A, 30, 1e-2);
  Vector g = random_vector(static_cast<std::size_t>(A.n), 2), c;
  for (auto _ : state) {
    apply_p0(F, g, c);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_apply_p0)->Arg(32)->Arg(64)->Arg(128);

// Window cost: 2k dots and 2k axpys on top of the triangular solves.
void BM_apply_preconditioner(benchmark::State& state) {
  const index_t k = 64;
  SparseMatrix A = generate_grid2d(k, k);
  ICFactor F = ic_factor(A, 30, 1e-2);
  DeflationBasis Q;
  Vector q = random_vector(static_cast<std::size_t>(A.n), 3);
  normalize(q);
  Q.push(q);

  BfgsWindow w(state.range(0));
  for (index_t i = 0; i < state.range(0); ++i) {
    Vector s = random_vector(static_cast<std::size_t>(A.n), 10 + i);
    Vector r = random_vector(static_cast<std::size_t>(A.n), 90 + i);
    if (dot(s, r) >= 0.0) scal(-1.0, r);
    w.push(s, r);
  }
  Vector g = random_vector(static_cast<std::size_t>(A.n), 5), c;
  Q.project_once(g);
  for (auto _ : state) {
    apply_preconditioner(w, F, Q, g, c);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_apply_preconditioner)->Arg(0)->Arg(1)->Arg(5)->Arg(10);

void BM_solve_leftmost(benchmark::State& state) {
  SparseMatrix A = generate_grid2d(20, 20);
  SolverConfig cfg;
  cfg.n_eig = 4;
  cfg.k_max = state.range(0);
  for (auto _ : state) {
    SolveOutcome res = solve_leftmost(A, cfg);
    benchmark::DoNotOptimize(res.trace.mvp.count);
  }
}
BENCHMARK(BM_solve_leftmost)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
