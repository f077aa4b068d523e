#pragma once

#include "spdeig/bfgs.hpp"
#include "spdeig/deflation.hpp"
#include "spdeig/dense.hpp"
#include "spdeig/ichol.hpp"

namespace spdeig {

/// Full reference eigendecomposition, ascending. Test and diagnostics
/// support; never part of a timed path.
struct DenseSpectrum {
  std::vector<double> eigenvalues;
  DenseMatrix eigenvectors;  // orthonormal columns
};

/// Guarded at n <= 2000.
DenseSpectrum dense_eigen(const SparseMatrix& A);

/// xi_j = lambda_j / (lambda_{j+1} - lambda_j), the reciprocal relative
/// separation; j is 1-based.
double relative_separation(const std::vector<double>& eigenvalues, int j);

struct PrecondSpectrum {
  std::vector<double> eigenvalues;  // of J^{1/2} P J^{1/2}, ascending
  double kappa = 0.0;   // max eig / smallest eig above the zero cutoff
  double e_norm = 0.0;  // max |1 - eig| over the nondeflated spectrum
  double most_negative_j_eig = 0.0;  // most negative eigenvalue of J, clipped to 0
  int clipped = 0;                   // directions clipped for the square root
};

/// Dense diagnostic of Table-3 kind: forms J = (I-QQ')(A - theta I)(I-QQ'),
/// its PSD square root (negative directions clipped to zero and counted),
/// the dense preconditioner from the window recursion over (L L')^{-1},
/// and the spectrum of J^{1/2} P J^{1/2}. Deflated directions fall below
/// the 1e-10 * max cutoff and are excluded from kappa and the E norm.
/// Guarded at n <= 500.
PrecondSpectrum preconditioned_jacobian_spectrum(const SparseMatrix& A,
                                                 double theta,
                                                 const DeflationBasis& basis,
                                                 const BfgsWindow& window,
                                                 const ICFactor& F);

}  // namespace spdeig
