#include "netadapt/graph.hpp"

#include <cmath>
#include <string>

namespace netadapt::graph {

namespace {
constexpr const char* kModule = "embedding";
}

Matrix adjacency(const mmd::LabeledSplit& split) {
  mmd::validate(split);
  const Index n = split.total();
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    w(i, i) = 1.0;
  }
  for (Index i = 0; i < split.n_s; ++i) {
    for (Index j = i + 1; j < split.n_s; ++j) {
      if (split.source_labels[static_cast<std::size_t>(i)] ==
          split.source_labels[static_cast<std::size_t>(j)]) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
    }
  }
  return w;
}

GraphPieces normalized_laplacian(const Matrix& w) {
  require_finite(w, kModule, "adjacency");
  require_symmetric(w, kModule, "adjacency");
  if ((w.array() < 0.0).any()) {
    throw InvalidArgument(kModule, "adjacency entries must be nonnegative");
  }
  const Index n = w.rows();
  Vector degrees = w.rowwise().sum();
  for (Index i = 0; i < n; ++i) {
    if (!(degrees(i) > 0.0)) {
      throw ZeroDegree(kModule, "vertex " + std::to_string(i) + " has zero degree");
    }
  }
  Vector inv_sqrt = degrees.array().rsqrt();
  Matrix l = Matrix::Identity(n, n) -
             (inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal());
  return GraphPieces{w, std::move(degrees), symmetrized(l)};
}

double embedding_objective_oracle(const Matrix& z, const GraphPieces& pieces) {
  const Index n = pieces.w.rows();
  if (z.cols() != n) {
    throw DimensionMismatch(kModule, "embedding must have one column per vertex");
  }
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (pieces.w(i, j) == 0.0) continue;
      Vector diff = z.col(i) / std::sqrt(pieces.degrees(i)) -
                    z.col(j) / std::sqrt(pieces.degrees(j));
      total += pieces.w(i, j) * diff.squaredNorm();
    }
  }
  return 0.5 * total;
}

}  // namespace netadapt::graph
