#include "spdeig/vec.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace spdeig {

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double nrm2(const Vector& x) { return std::sqrt(dot(x, x)); }

void axpy(double a, const Vector& x, Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scal(double a, Vector& x) {
  for (double& xi : x) xi *= a;
}

double normalize(Vector& x) {
  const double nrm = nrm2(x);
  if (nrm == 0.0) throw std::domain_error("normalize: zero vector");
  scal(1.0 / nrm, x);
  return nrm;
}

bool all_finite(const Vector& x) {
  for (double xi : x)
    if (!std::isfinite(xi)) return false;
  return true;
}

Vector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (double& vi : v) vi = dist(gen);
  return v;
}

}  // namespace spdeig
