#pragma once

#include <Eigen/Dense>

#include "netadapt/errors.hpp"

namespace netadapt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline void require_finite(const Matrix& m, const char* module, const char* what) {
  if (!m.allFinite()) {
    throw InvalidArgument(module, std::string(what) + " contains a non-finite entry");
  }
}

inline void require_square(const Matrix& m, const char* module, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(module, std::string(what) + " must be square, got " +
                                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Relative asymmetry check: ||m - m^T||_F <= tol * ||m||_F. The zero matrix passes.
inline void require_symmetric(const Matrix& m, const char* module, const char* what,
                              double tol = 1e-10) {
  require_square(m, module, what);
  double scale = m.norm();
  double skew = (m - m.transpose()).norm();
  if (skew > tol * scale) {
    throw NotSymmetric(module, std::string(what) + " is not symmetric: ||m - m^T|| = " +
                                   std::to_string(skew) + " exceeds " + std::to_string(tol) +
                                   " * ||m|| = " + std::to_string(tol * scale));
  }
}

inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace netadapt
