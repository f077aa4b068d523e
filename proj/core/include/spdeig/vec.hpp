#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spdeig {

using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double nrm2(const Vector& x);

/// y += a*x
void axpy(double a, const Vector& x, Vector& y);
void scal(double a, Vector& x);

/// Scales x to unit 2-norm, returns the original norm. Throws on zero input.
double normalize(Vector& x);

bool all_finite(const Vector& x);

/// Deterministic uniform(-1,1) entries; the seed fully determines the result.
Vector random_vector(std::size_t n, std::uint64_t seed);

}  // namespace spdeig
