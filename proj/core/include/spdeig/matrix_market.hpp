#pragma once

#include "spdeig/sparse.hpp"

#include <string>

namespace spdeig {

/// Reads a Matrix Market coordinate file (real, symmetric; lower or full
/// storage) and returns the symmetrized full-pattern matrix. Nonpositive
/// diagonal entries produce a stderr warning, not a failure; SPD-ness is
/// verified by the solvers. Throws std::runtime_error on malformed input
/// or a non-symmetric declaration.
SparseMatrix load_matrix_market(const std::string& path);

/// Writes the lower triangle in symmetric coordinate format, 17 significant
/// digits so that load(save(A)) reproduces values exactly.
void save_matrix_market(const std::string& path, const SparseMatrix& A);

}  // namespace spdeig
