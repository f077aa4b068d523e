#include "spdeig/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace spdeig {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

SparseMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket")
    throw std::runtime_error(path + ": missing MatrixMarket banner");
  if (lower(object) != "matrix" || lower(format) != "coordinate")
    throw std::runtime_error(path + ": only coordinate matrices are supported");
  if (lower(field) != "real")
    throw std::runtime_error(path + ": only real matrices are supported, got '" +
                             field + "'");
  if (lower(symmetry) != "symmetric")
    throw std::runtime_error(path + ": symmetric storage required, got '" +
                             symmetry + "'");

  // Skip comments, then the size line.
  do {
    if (!std::getline(in, line))
      throw std::runtime_error(path + ": missing size line");
  } while (!line.empty() && line[0] == '%');

  index_t rows = 0, cols = 0;
  long long declared_nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> declared_nnz))
      throw std::runtime_error(path + ": malformed size line");
  }
  if (rows != cols)
    throw std::runtime_error(path + ": matrix is not square");
  if (rows <= 0 || declared_nnz < 0)
    throw std::runtime_error(path + ": invalid dimensions");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(declared_nnz));
  long long seen = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    index_t i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v))
      throw std::runtime_error(path + ": malformed entry line: " + line);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw std::runtime_error(path + ": entry index out of range: " + line);
    entries.push_back({i - 1, j - 1, v});
    ++seen;
  }
  if (seen != declared_nnz)
    throw std::runtime_error(path + ": entry count does not match header");

  SparseMatrix A = from_triplets(rows, entries, /*symmetrize=*/true);
  for (index_t i = 0; i < A.n; ++i) {
    if (A.diag(i) <= 0.0) {
      std::cerr << "warning: " << path << ": nonpositive diagonal at row "
                << (i + 1) << "; SPD check deferred to the solver\n";
      break;
    }
  }
  return A;
}

void save_matrix_market(const std::string& path, const SparseMatrix& A) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << A.n << " " << A.n << " " << A.lower_nnz() << "\n";
  char buf[64];
  for (index_t i = 0; i < A.n; ++i) {
    for (index_t p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) {
      const index_t j = A.col_idx[p];
      if (j > i) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", A.values[p]);
      out << (i + 1) << " " << (j + 1) << " " << buf << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace spdeig
