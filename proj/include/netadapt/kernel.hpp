#pragma once

#include <optional>

#include "netadapt/matrix.hpp"

namespace netadapt::kernel {

enum class Kind { gaussian, linear };

// bandwidth is the squared width sigma^2 of the gaussian kernel. Empty means
// "resolve by the median heuristic when the gram matrix is built"; ignored for
// the linear kernel.
struct KernelSpec {
  Kind kind = Kind::gaussian;
  std::optional<double> bandwidth;
};

struct KernelMatrix {
  Matrix gram;
  KernelSpec spec;
  std::optional<double> resolved_bandwidth;  // set for gaussian kernels
};

/// Median of the n * (n - 1) / 2 pairwise squared distances between columns of x.
/// Even counts average the two middle values. Throws DegenerateData when the
/// median is zero (at least half of all pairs coincide).
double median_sq_dist(const Matrix& x);

/// Kernel matrix over the columns of x. Gaussian bandwidth is taken from the
/// spec or resolved by median_sq_dist.
KernelMatrix gram(const Matrix& x, const KernelSpec& spec);

/// Kernel evaluations k(x_train.col(i), x_new.col(j)) as an n_train x n_new
/// matrix. Gaussian kernels require the bandwidth resolved on the training data.
Matrix cross_gram(const Matrix& x_train, const Matrix& x_new, const KernelSpec& spec,
                  std::optional<double> resolved_bandwidth);

/// H = I - (1/n) * ones. Symmetric and idempotent.
Matrix centering_matrix(Index n);

}  // namespace netadapt::kernel
