#include "netadapt/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace netadapt::kernel {

namespace {

constexpr const char* kModule = "kernel";

double resolve_bandwidth(const Matrix& x, const KernelSpec& spec) {
  if (spec.bandwidth) {
    if (!(*spec.bandwidth > 0.0)) {
      throw InvalidArgument(kModule, "bandwidth must be positive");
    }
    return *spec.bandwidth;
  }
  return median_sq_dist(x);
}

}  // namespace

double median_sq_dist(const Matrix& x) {
  const Index n = x.cols();
  if (n < 2) {
    throw InvalidArgument(kModule, "median_sq_dist needs at least two points");
  }
  std::vector<double> d2;
  d2.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      d2.push_back((x.col(i) - x.col(j)).squaredNorm());
    }
  }
  const std::size_t m = d2.size();
  auto mid = d2.begin() + m / 2;
  std::nth_element(d2.begin(), mid, d2.end());
  double median = *mid;
  if (m % 2 == 0) {
    double lower = *std::max_element(d2.begin(), mid);
    median = 0.5 * (lower + median);
  }
  if (!(median > 0.0)) {
    throw DegenerateData(kModule,
                         "median pairwise squared distance is zero; supply a fixed bandwidth");
  }
  return median;
}

KernelMatrix gram(const Matrix& x, const KernelSpec& spec) {
  require_finite(x, kModule, "data");
  const Index n = x.cols();
  if (n < 1) {
    throw InvalidArgument(kModule, "gram needs at least one point");
  }
  KernelMatrix out;
  out.spec = spec;
  if (spec.kind == Kind::linear) {
    out.gram = symmetrized(x.transpose() * x);
    return out;
  }
  const double bw = resolve_bandwidth(x, spec);
  out.resolved_bandwidth = bw;
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      double v = std::exp(-(x.col(i) - x.col(j)).squaredNorm() / bw);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  out.gram = std::move(g);
  return out;
}

Matrix cross_gram(const Matrix& x_train, const Matrix& x_new, const KernelSpec& spec,
                  std::optional<double> resolved_bandwidth) {
  require_finite(x_train, kModule, "training data");
  require_finite(x_new, kModule, "new data");
  if (x_train.rows() != x_new.rows()) {
    throw DimensionMismatch(kModule, "training and new points must share the feature dimension");
  }
  if (spec.kind == Kind::linear) {
    return x_train.transpose() * x_new;
  }
  double bw = 0.0;
  if (resolved_bandwidth) {
    bw = *resolved_bandwidth;
  } else if (spec.bandwidth) {
    bw = *spec.bandwidth;
  } else {
    throw InvalidArgument(kModule, "cross_gram needs the bandwidth resolved on the training data");
  }
  if (!(bw > 0.0)) {
    throw InvalidArgument(kModule, "bandwidth must be positive");
  }
  Matrix g(x_train.cols(), x_new.cols());
  for (Index i = 0; i < x_train.cols(); ++i) {
    for (Index j = 0; j < x_new.cols(); ++j) {
      g(i, j) = std::exp(-(x_train.col(i) - x_new.col(j)).squaredNorm() / bw);
    }
  }
  return g;
}

Matrix centering_matrix(Index n) {
  if (n < 1) {
    throw InvalidArgument(kModule, "centering_matrix needs n >= 1");
  }
  Matrix h = Matrix::Identity(n, n);
  h.array() -= 1.0 / static_cast<double>(n);
  return h;
}

}  // namespace netadapt::kernel
