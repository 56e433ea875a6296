#include "netadapt/solver.hpp"

#include <algorithm>
#include <string>

#include "netadapt/classify.hpp"
#include "netadapt/linalg.hpp"

namespace netadapt::solver {

namespace {

constexpr const char* kModule = "solver";

void check_hyper_params(const HyperParams& hp, Index n) {
  if (hp.alpha < 0.0 || hp.beta < 0.0 || hp.gamma < 0.0) {
    throw InvalidArgument(kModule, "alpha, beta and gamma must be nonnegative");
  }
  if (hp.k < 1 || hp.k > n) {
    throw DimensionMismatch(kModule, "k = " + std::to_string(hp.k) + " must be in [1, " +
                                         std::to_string(n) + "]");
  }
  if (hp.iterations < 1) {
    throw InvalidArgument(kModule, "iterations must be at least 1");
  }
  if (hp.ridge && *hp.ridge < 0.0) {
    throw InvalidArgument(kModule, "ridge must be nonnegative");
  }
}

// First coordinate clearly away from rounding noise becomes positive.
void fix_column_signs(Matrix& a) {
  for (Index c = 0; c < a.cols(); ++c) {
    const double cutoff = 1e-12 * a.col(c).cwiseAbs().maxCoeff();
    for (Index r = 0; r < a.rows(); ++r) {
      const double v = a(r, c);
      if (std::abs(v) > cutoff && v != 0.0) {
        if (v < 0.0) a.col(c) = -a.col(c);
        break;
      }
    }
  }
}

struct Problem {
  kernel::KernelMatrix kern;
  mmd::LabeledSplit split;
  graph::GraphPieces pieces;
  Matrix klk;  // K * L * K^T
  Matrix b;    // K * D * K^T
};

Problem setup_problem(const Matrix& x_source, const std::vector<int>& y_source,
                      const Matrix& x_target, const kernel::KernelSpec& spec) {
  if (x_source.rows() != x_target.rows()) {
    throw DimensionMismatch(kModule, "source and target must share the feature dimension");
  }
  if (x_source.cols() < 1 || x_target.cols() < 1) {
    throw InvalidArgument(kModule, "both domains must be nonempty");
  }
  if (static_cast<Index>(y_source.size()) != x_source.cols()) {
    throw LengthMismatch(kModule, "one label per source point required");
  }
  int num_classes = 0;
  for (int y : y_source) {
    if (y < 1) {
      throw InvalidArgument(kModule, "labels must be positive class ids");
    }
    num_classes = std::max(num_classes, y);
  }

  Problem p;
  Matrix x(x_source.rows(), x_source.cols() + x_target.cols());
  x << x_source, x_target;
  p.kern = kernel::gram(x, spec);
  p.split = mmd::LabeledSplit{x_source.cols(), x_target.cols(), y_source, std::nullopt,
                              num_classes};
  p.pieces = graph::normalized_laplacian(graph::adjacency(p.split));
  const Matrix& k = p.kern.gram;
  p.klk = symmetrized(k * p.pieces.l * k);
  p.b = symmetrized(k * p.pieces.degrees.asDiagonal() * k);
  return p;
}

// Columns: the marginal indicator plus one column per constructible class.
Matrix discrepancy_indicators(const mmd::LabeledSplit& split) {
  std::vector<Vector> cols;
  cols.push_back(mmd::marginal_indicator(split));
  if (split.target_labels_pred) {
    for (int c = 1; c <= split.num_classes; ++c) {
      if (auto u = mmd::class_indicator(split, c)) {
        cols.push_back(std::move(*u));
      }
    }
  }
  Matrix u(split.total(), static_cast<Index>(cols.size()));
  for (Index j = 0; j < u.cols(); ++j) {
    u.col(j) = cols[static_cast<std::size_t>(j)];
  }
  return u;
}

}  // namespace

std::pair<Matrix, Matrix> assemble_system(const kernel::KernelMatrix& kern,
                                          const mmd::MmdMatrices& mmds,
                                          const graph::GraphPieces& pieces,
                                          const HyperParams& hp) {
  const Matrix& k = kern.gram;
  const Index n = k.rows();
  if (mmds.m0.rows() != n || pieces.l.rows() != n) {
    throw DimensionMismatch(kModule, "kernel, discrepancy and graph sizes must match");
  }
  check_hyper_params(hp, n);
  Matrix s = Matrix::Zero(n, n);
  if (hp.alpha != 0.0) {
    s += hp.alpha * (k * mmds.sum() * k.transpose());
  }
  if (hp.beta != 0.0) {
    s += hp.beta * (k * pieces.l * k.transpose());
  }
  s.diagonal().array() += hp.gamma;
  Matrix b = k * pieces.degrees.asDiagonal() * k.transpose();
  return {symmetrized(s), symmetrized(b)};
}

ProjectionResult solve_projection(const Matrix& s, const Matrix& b,
                                  const kernel::KernelMatrix& kern, const HyperParams& hp) {
  if (s.rows() != kern.gram.rows()) {
    throw DimensionMismatch(kModule, "system and kernel sizes must match");
  }
  check_hyper_params(hp, s.rows());
  const double ridge = hp.ridge ? *hp.ridge : linalg::default_ridge(b);
  auto pairs = linalg::gen_sym_eigen_smallest(s, b, hp.k, ridge);
  ProjectionResult out;
  out.a = std::move(pairs.vectors);
  fix_column_signs(out.a);
  out.eigenvalues = std::move(pairs.values);
  out.z = out.a.transpose() * kern.gram;
  out.resolved_bandwidth = kern.resolved_bandwidth;
  out.ridge_used = ridge;
  return out;
}

ProjectionResult net_fit(const Matrix& x_source, const std::vector<int>& y_source,
                         const Matrix& x_target, const kernel::KernelSpec& spec,
                         const HyperParams& hp) {
  Problem p = setup_problem(x_source, y_source, x_target, spec);
  const Matrix& k = p.kern.gram;
  const Index n = k.rows();
  check_hyper_params(hp, n);

  ProjectionResult result;
  for (int pass = 0; pass < hp.iterations; ++pass) {
    Matrix u = discrepancy_indicators(p.split);
    Matrix g = k * u;
    Matrix s = hp.alpha * (g * g.transpose()) + hp.beta * p.klk;
    s.diagonal().array() += hp.gamma;

    ProjectionResult pr = solve_projection(symmetrized(s), p.b, p.kern, hp);
    std::vector<int> preds = classify::one_nn_predict(pr.z.leftCols(p.split.n_s), y_source,
                                                      pr.z.rightCols(p.split.n_t));
    const double discrepancy = (pr.a.transpose() * g).squaredNorm();
    const double embedding = (pr.a.transpose() * p.klk * pr.a).trace();

    result.a = std::move(pr.a);
    result.eigenvalues = std::move(pr.eigenvalues);
    result.z = std::move(pr.z);
    result.resolved_bandwidth = pr.resolved_bandwidth;
    result.ridge_used = pr.ridge_used;
    result.target_label_history.push_back(preds);
    result.objective_history.emplace_back(discrepancy, embedding);
    p.split.target_labels_pred = std::move(preds);
  }
  return result;
}

ProjectionResult jda_fit(const Matrix& x_source, const std::vector<int>& y_source,
                         const Matrix& x_target, const kernel::KernelSpec& spec,
                         const HyperParams& hp) {
  HyperParams adjusted = hp;
  adjusted.alpha = 1.0;
  adjusted.beta = 0.0;
  return net_fit(x_source, y_source, x_target, spec, adjusted);
}

ProjectionResult tca_fit(const Matrix& x_source, const std::vector<int>& y_source,
                         const Matrix& x_target, const kernel::KernelSpec& spec,
                         const HyperParams& hp) {
  HyperParams adjusted = hp;
  adjusted.alpha = 1.0;
  adjusted.beta = 0.0;
  adjusted.iterations = 1;
  return net_fit(x_source, y_source, x_target, spec, adjusted);
}

ProjectionResult kpca_fit(const Matrix& x, const kernel::KernelSpec& spec, Index k) {
  kernel::KernelMatrix kern = kernel::gram(x, spec);
  const Index n = kern.gram.rows();
  if (k < 1 || k > n) {
    throw DimensionMismatch(kModule, "k = " + std::to_string(k) + " must be in [1, " +
                                         std::to_string(n) + "]");
  }
  // K * H * K^T = K^2 - (K 1)(K 1)^T / n.
  Vector row_sums = kern.gram.rowwise().sum();
  Matrix c = kern.gram * kern.gram;
  c -= row_sums * row_sums.transpose() / static_cast<double>(n);
  auto pairs = linalg::sym_eigen(symmetrized(c));

  ProjectionResult out;
  out.eigenvalues = pairs.values.tail(k);
  out.a = pairs.vectors.rightCols(k);
  fix_column_signs(out.a);
  out.z = out.a.transpose() * kern.gram;
  out.resolved_bandwidth = kern.resolved_bandwidth;
  return out;
}

}  // namespace netadapt::solver
