#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "netadapt/graph.hpp"
#include "netadapt/kernel.hpp"
#include "netadapt/matrix.hpp"
#include "netadapt/mmd.hpp"

namespace netadapt::solver {

struct HyperParams {
  double alpha = 1.0;   // weight of the distribution-discrepancy term
  double beta = 1.0;    // weight of the similarity-embedding term
  double gamma = 1.0;   // weight of the Frobenius regularizer
  Index k = 20;         // embedding dimension
  int iterations = 10;  // label refinement passes
  std::optional<double> ridge;  // empty: 1e-6 * trace(b) / n, resolved at solve time
};

struct ProjectionResult {
  Matrix a;           // n x k projection, generalized eigenvectors
  Vector eigenvalues; // length k, ascending
  Matrix z;           // k x n embedded sample, z = a^T * K
  std::vector<std::vector<int>> target_label_history;            // one entry per pass
  std::vector<std::pair<double, double>> objective_history;      // (discrepancy, embedding)
  std::optional<double> resolved_bandwidth;
  double ridge_used = 0.0;
};

/// s = alpha * K * (sum of discrepancy matrices) * K^T + beta * K * L * K^T + gamma * I
/// and b = K * D * K^T, both symmetrized.
std::pair<Matrix, Matrix> assemble_system(const kernel::KernelMatrix& kern,
                                          const mmd::MmdMatrices& mmds,
                                          const graph::GraphPieces& pieces,
                                          const HyperParams& hp);

/// k smallest generalized eigenpairs of (s, b + ridge * I) with the embedded
/// sample z = a^T * K. Column signs are fixed so the first nonzero coordinate
/// of each eigenvector is positive.
ProjectionResult solve_projection(const Matrix& s, const Matrix& b,
                                  const kernel::KernelMatrix& kern, const HyperParams& hp);

/// Full adaptation loop: joint kernel over [x_source, x_target], label-similarity
/// graph over the source, then hp.iterations alternating passes of projection
/// solve and nearest-neighbor target label refresh. The first pass uses the
/// marginal discrepancy only; later passes add every constructible
/// class-conditional term built from the previous pass's predictions.
ProjectionResult net_fit(const Matrix& x_source, const std::vector<int>& y_source,
                         const Matrix& x_target, const kernel::KernelSpec& spec,
                         const HyperParams& hp);

/// net_fit with the embedding term removed (alpha = 1, beta = 0).
ProjectionResult jda_fit(const Matrix& x_source, const std::vector<int>& y_source,
                         const Matrix& x_target, const kernel::KernelSpec& spec,
                         const HyperParams& hp);

/// Single marginal-only pass with the embedding term removed
/// (alpha = 1, beta = 0, iterations = 1).
ProjectionResult tca_fit(const Matrix& x_source, const std::vector<int>& y_source,
                         const Matrix& x_target, const kernel::KernelSpec& spec,
                         const HyperParams& hp);

/// Kernel principal components: the k largest unit-norm eigenvectors of
/// K * H * K^T with H the centering matrix; z = a^T * K.
ProjectionResult kpca_fit(const Matrix& x, const kernel::KernelSpec& spec, Index k);

}  // namespace netadapt::solver
