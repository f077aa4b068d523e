#include "spdeig/bfgs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spdeig {

BfgsWindow::Push BfgsWindow::push(const Vector& s, const Vector& r) {
  if (k_max_ == 0) return Push::Disabled;
  const double alpha = dot(s, r);
  const double scale = nrm2(s) * nrm2(r);
  if (std::abs(alpha) <= 1e-14 * scale) {
    ++rejected_;
    return Push::RejectedTiny;
  }
  if (alpha >= 0.0) {
    ++rejected_;
    return Push::RejectedSign;
  }
  push_unchecked(s, r);
  return Push::Stored;
}

void BfgsWindow::push_unchecked(Vector s, Vector r) {
  if (k_max_ == 0) return;
  BfgsPair p{std::move(s), std::move(r), 0.0};
  p.alpha = dot(p.s, p.r);
  const std::size_t slot = static_cast<std::size_t>(pushes_ % k_max_);
  if (slot < slots_.size()) slots_[slot] = std::move(p);
  else slots_.push_back(std::move(p));
  ++pushes_;
}

void BfgsWindow::clear() {
  slots_.clear();
  pushes_ = 0;
}

const BfgsPair& BfgsWindow::pair(index_t i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("BfgsWindow::pair");
  if (pushes_ <= k_max_) return slots_[static_cast<std::size_t>(i)];
  return slots_[static_cast<std::size_t>((pushes_ + i) % k_max_)];
}

void apply_preconditioner(const BfgsWindow& w, const ICFactor& F,
                          const DeflationBasis& basis, const Vector& g,
                          Vector& c) {
  const index_t k = w.size();
  Vector work = g;
  std::vector<double> a(static_cast<std::size_t>(k), 0.0);
  for (index_t i = k - 1; i >= 0; --i) {
    const BfgsPair& p = w.pair(i);
    const double ai = dot(p.s, work) / p.alpha;
    a[static_cast<std::size_t>(i)] = ai;
    axpy(-ai, p.r, work);
  }
  apply_p0(F, work, c);
  for (index_t i = 0; i < k; ++i) {
    const BfgsPair& p = w.pair(i);
    const double b = dot(p.r, c) / p.alpha;
    axpy(-(a[static_cast<std::size_t>(i)] + b), p.s, c);
  }
  basis.project_once(c);
}

Vector apply_preconditioner(const BfgsWindow& w, const ICFactor& F,
                            const DeflationBasis& basis, const Vector& g) {
  Vector c;
  apply_preconditioner(w, F, basis, g, c);
  return c;
}

SpdProbeReport spd_probe(const BfgsWindow& w, const ICFactor& F,
                         const DeflationBasis& basis, int trials,
                         std::uint64_t seed) {
  SpdProbeReport report;
  report.trials = trials;
  report.min_quadratic = std::numeric_limits<double>::infinity();
  const std::size_t n = static_cast<std::size_t>(F.L.n);
  Vector c;
  for (int t = 0; t < trials; ++t) {
    Vector z = random_vector(n, seed + static_cast<std::uint64_t>(t));
    if (orthogonalize(basis, z).zero) continue;
    normalize(z);
    apply_preconditioner(w, F, basis, z, c);
    const double q = dot(z, c);
    report.min_quadratic = std::min(report.min_quadratic, q);
    if (!(q > 0.0)) ++report.failures;
  }
  return report;
}

}  // namespace spdeig
