#include "netadapt/linalg.hpp"

#include <cmath>
#include <string>

namespace netadapt::linalg {

namespace {
constexpr const char* kModule = "linalg";
}

Matrix cholesky(const Matrix& m) {
  require_finite(m, kModule, "matrix");
  require_symmetric(m, kModule, "matrix");
  const Index n = m.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double d = m(j, j) - l.row(j).head(j).squaredNorm();
    if (d <= 0.0 || !std::isfinite(d)) {
      throw NotPositiveDefinite(kModule, "pivot " + std::to_string(j) +
                                             " is not positive (" + std::to_string(d) +
                                             "); matrix is not positive definite");
    }
    l(j, j) = std::sqrt(d);
    for (Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

EigenPairs sym_eigen(const Matrix& m) {
  require_finite(m, kModule, "matrix");
  require_symmetric(m, kModule, "matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m));
  if (solver.info() != Eigen::Success) {
    throw NoConvergence(kModule, "symmetric eigensolver did not converge for n = " +
                                     std::to_string(m.rows()));
  }
  return EigenPairs{solver.eigenvalues(), solver.eigenvectors()};
}

double default_ridge(const Matrix& b) {
  require_square(b, kModule, "matrix");
  return 1e-6 * b.trace() / static_cast<double>(b.rows());
}

EigenPairs gen_sym_eigen_smallest(const Matrix& s, const Matrix& b, Index k, double ridge) {
  if (s.rows() != b.rows() || s.cols() != b.cols()) {
    throw DimensionMismatch(kModule, "s and b must have matching shapes");
  }
  require_symmetric(s, kModule, "s");
  require_symmetric(b, kModule, "b");
  const Index n = s.rows();
  if (k < 1 || k > n) {
    throw DimensionMismatch(kModule, "k = " + std::to_string(k) + " must be in [1, " +
                                         std::to_string(n) + "]");
  }
  if (!(ridge >= 0.0)) {
    throw InvalidArgument(kModule, "ridge must be nonnegative");
  }

  Matrix b_r = symmetrized(b);
  b_r.diagonal().array() += ridge;
  Matrix l;
  try {
    l = cholesky(b_r);
  } catch (const NotPositiveDefinite&) {
    throw NotPositiveDefinite(kModule,
                              "b + ridge * I is not positive definite; raise the ridge");
  }

  // Reduce to the standard problem C = L^-1 * s * L^-T, then map back a = L^-T * v.
  auto lower = l.triangularView<Eigen::Lower>();
  Matrix c = lower.solve(symmetrized(s));
  c = lower.solve(c.transpose()).transpose();
  EigenPairs full = sym_eigen(symmetrized(c));

  Matrix a = l.transpose().triangularView<Eigen::Upper>().solve(full.vectors.leftCols(k));
  return EigenPairs{full.values.head(k), a};
}

}  // namespace netadapt::linalg
