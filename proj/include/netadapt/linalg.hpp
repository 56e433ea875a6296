#pragma once

#include "netadapt/matrix.hpp"

namespace netadapt::linalg {

// Eigenpairs sorted by ascending eigenvalue; vectors.col(i) pairs with values(i).
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

/// Lower-triangular Cholesky factor L with L * L^T = m.
/// Throws NotSymmetric / NotPositiveDefinite.
Matrix cholesky(const Matrix& m);

/// Full symmetric eigendecomposition, eigenvalues ascending, eigenvectors orthonormal.
/// Throws NotSymmetric / NoConvergence.
EigenPairs sym_eigen(const Matrix& m);

/// Default regularizer for gen_sym_eigen_smallest: 1e-6 * trace(b) / n.
double default_ridge(const Matrix& b);

/// k smallest eigenpairs of s * a = lambda * (b + ridge * I) * a for symmetric s
/// and symmetric positive definite b + ridge * I. Columns of the result satisfy
/// a_i^T * (b + ridge * I) * a_j = delta_ij.
EigenPairs gen_sym_eigen_smallest(const Matrix& s, const Matrix& b, Index k, double ridge);

}  // namespace netadapt::linalg
