#pragma once

#include "spdeig/sparse.hpp"

#include <cstdint>
#include <string>

namespace spdeig {

/// tridiag(-1, 2, -1), the 1D Dirichlet Laplacian.
SparseMatrix generate_path1d(index_t n);

/// 5-point stencil on an nx-by-ny grid, Dirichlet boundary.
SparseMatrix generate_grid2d(index_t nx, index_t ny);

/// 7-point stencil on an nx-by-ny-by-nz grid, Dirichlet boundary.
SparseMatrix generate_grid3d(index_t nx, index_t ny, index_t nz);

/// Weighted graph Laplacian L = D - W of a ring with random chords, plus
/// eps*I. With eps = 0 the matrix is singular with the constant vector in
/// its kernel; callers deflate that vector instead of shifting.
SparseMatrix generate_graph_laplacian(index_t nodes, index_t chords_per_node,
                                      std::uint64_t seed, double eps);

/// Parsed "--generate" request, e.g. "grid2d:20", "grid3d:6,6,4",
/// "graph:1000,3", "path1d:50".
struct GeneratorSpec {
  std::string kind;
  SparseMatrix matrix;
  /// True for a graph Laplacian built with eps = 0: the constant vector
  /// spans the kernel and must be deflated.
  bool deflate_constant = false;
};

GeneratorSpec generate_from_string(const std::string& spec,
                                   std::uint64_t seed = 1234,
                                   double graph_eps = 0.0);

}  // namespace spdeig
