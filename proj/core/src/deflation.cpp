#include "spdeig/deflation.hpp"

#include <cmath>
#include <stdexcept>

namespace spdeig {

void DeflationBasis::project_once(Vector& c) const {
  if (cols_.empty()) return;
  std::vector<double> z(cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) z[j] = dot(cols_[j], c);
  for (std::size_t j = 0; j < cols_.size(); ++j) axpy(-z[j], cols_[j], c);
}

double DeflationBasis::max_overlap(const Vector& v) const {
  double m = 0.0;
  for (const Vector& q : cols_) m = std::max(m, std::abs(dot(q, v)));
  return m;
}

double DeflationBasis::orthonormality_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < cols_.size(); ++i)
    for (std::size_t l = i; l < cols_.size(); ++l) {
      const double d = dot(cols_[i], cols_[l]) - (i == l ? 1.0 : 0.0);
      m = std::max(m, std::abs(d));
    }
  return m;
}

OrthoOutcome orthogonalize(const DeflationBasis& Q, Vector& v) {
  OrthoOutcome out;
  const double norm0 = nrm2(v);
  if (norm0 == 0.0) {
    out.zero = true;
    out.norm_ratio = 0.0;
    return out;
  }
  Q.project_once(v);
  double norm1 = nrm2(v);
  if (norm1 < 0.1 * norm0) {
    Q.project_once(v);
    norm1 = nrm2(v);
  }
  out.norm_ratio = norm1 / norm0;
  out.zero = norm1 < 1e-14 * norm0;
  return out;
}

void ProjectedJacobian::apply(const Vector& z, Vector& out, MvpCounter* mvp) const {
  if (z.size() != static_cast<std::size_t>(A.n))
    throw std::invalid_argument("ProjectedJacobian::apply: dimension mismatch");
  matvec(A, z, out, mvp);
  axpy(-theta, z, out);
  basis.project_once(out);

  if (debug_check_right_projector) {
    Vector zp = z;
    basis.project_once(zp);
    Vector ref = matvec(A, zp, mvp);
    axpy(-theta, zp, ref);
    basis.project_once(ref);
    double diff = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i)
      diff = std::max(diff, std::abs(out[i] - ref[i]));
    const double scale = nrm2(ref);
    if (diff > 1e-10 * std::max(1.0, scale))
      throw std::logic_error(
          "ProjectedJacobian: input was not orthogonal to the basis");
  }
}

EigenResidual eigenresidual(const SparseMatrix& A, const Vector& u,
                            MvpCounter* mvp) {
  const double unorm = nrm2(u);
  if (unorm == 0.0) throw std::domain_error("eigenresidual: zero vector");
  const Vector au = matvec(A, u, mvp);

  EigenResidual out;
  out.theta = dot(u, au) / (unorm * unorm);
  out.r.resize(u.size());
  const double inv = 1.0 / unorm;
  for (std::size_t i = 0; i < u.size(); ++i)
    out.r[i] = (au[i] - out.theta * u[i]) * inv;
  out.rnorm = nrm2(out.r);
  return out;
}

}  // namespace spdeig
