#include "spdeig/laplacian.hpp"

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spdeig {

namespace {

SparseMatrix grid_laplacian(index_t nx, index_t ny, index_t nz) {
  if (nx <= 0 || ny <= 0 || nz <= 0)
    throw std::invalid_argument("grid laplacian: nonpositive size");
  const index_t n = nx * ny * nz;
  auto id = [&](index_t i, index_t j, index_t k) { return (k * ny + j) * nx + i; };
  const double center = (nz > 1) ? 6.0 : (ny > 1 ? 4.0 : 2.0);

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * 4);
  for (index_t k = 0; k < nz; ++k)
    for (index_t j = 0; j < ny; ++j)
      for (index_t i = 0; i < nx; ++i) {
        const index_t row = id(i, j, k);
        t.push_back({row, row, center});
        if (i + 1 < nx) t.push_back({row, id(i + 1, j, k), -1.0});
        if (j + 1 < ny) t.push_back({row, id(i, j + 1, k), -1.0});
        if (k + 1 < nz) t.push_back({row, id(i, j, k + 1), -1.0});
      }
  return from_triplets(n, t, /*symmetrize=*/true);
}

}  // namespace

SparseMatrix generate_path1d(index_t n) { return grid_laplacian(n, 1, 1); }

SparseMatrix generate_grid2d(index_t nx, index_t ny) {
  return grid_laplacian(nx, ny, 1);
}

SparseMatrix generate_grid3d(index_t nx, index_t ny, index_t nz) {
  return grid_laplacian(nx, ny, nz);
}

SparseMatrix generate_graph_laplacian(index_t nodes, index_t chords_per_node,
                                      std::uint64_t seed, double eps) {
  if (nodes < 3) throw std::invalid_argument("graph laplacian: need >= 3 nodes");
  if (chords_per_node < 0)
    throw std::invalid_argument("graph laplacian: negative chord count");

  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<index_t> pick(0, nodes - 1);
  std::uniform_int_distribution<int> weight(1, 5);

  std::set<std::pair<index_t, index_t>> edges;
  std::vector<Triplet> t;
  std::vector<double> degree(static_cast<std::size_t>(nodes), 0.0);

  auto add_edge = [&](index_t a, index_t b, double w) {
    if (a == b) return false;
    auto key = std::minmax(a, b);
    if (!edges.insert({key.first, key.second}).second) return false;
    t.push_back({a, b, -w});
    degree[a] += w;
    degree[b] += w;
    return true;
  };

  for (index_t i = 0; i < nodes; ++i) add_edge(i, (i + 1) % nodes, 1.0);
  const index_t want = nodes * chords_per_node / 2;
  index_t placed = 0;
  // Bounded retries keep the generator total even if the graph saturates.
  for (index_t attempt = 0; placed < want && attempt < 20 * want; ++attempt)
    if (add_edge(pick(gen), pick(gen), static_cast<double>(weight(gen)))) ++placed;

  for (index_t i = 0; i < nodes; ++i) t.push_back({i, i, degree[i] + eps});
  return from_triplets(nodes, t, /*symmetrize=*/true);
}

GeneratorSpec generate_from_string(const std::string& spec, std::uint64_t seed,
                                   double graph_eps) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("generator spec must look like kind:params, got '" +
                                spec + "'");
  const std::string kind = spec.substr(0, colon);
  std::vector<index_t> p;
  {
    std::stringstream params(spec.substr(colon + 1));
    std::string item;
    while (std::getline(params, item, ','))
      p.push_back(static_cast<index_t>(std::stoll(item)));
  }
  if (p.empty()) throw std::invalid_argument("generator spec: missing sizes");

  GeneratorSpec out;
  out.kind = kind;
  if (kind == "path1d") {
    out.matrix = generate_path1d(p[0]);
  } else if (kind == "grid2d") {
    out.matrix = generate_grid2d(p[0], p.size() > 1 ? p[1] : p[0]);
  } else if (kind == "grid3d") {
    out.matrix = generate_grid3d(p[0], p.size() > 1 ? p[1] : p[0],
                                 p.size() > 2 ? p[2] : p[0]);
  } else if (kind == "graph") {
    const index_t chords = p.size() > 1 ? p[1] : 3;
    out.matrix = generate_graph_laplacian(p[0], chords, seed, graph_eps);
    out.deflate_constant = (graph_eps == 0.0);
  } else {
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
  }
  return out;
}

}  // namespace spdeig
