#include "netadapt/mmd.hpp"

#include <string>

namespace netadapt::mmd {

namespace {

constexpr const char* kModule = "mmd";

void check_labels(const std::vector<int>& labels, int num_classes, const char* what) {
  for (int y : labels) {
    if (y < 1 || y > num_classes) {
      throw InvalidArgument(kModule, std::string(what) + " label " + std::to_string(y) +
                                         " outside {1.." + std::to_string(num_classes) + "}");
    }
  }
}

void check_projection(const Matrix& a, const kernel::KernelMatrix& kern) {
  if (a.rows() != kern.gram.rows()) {
    throw DimensionMismatch(kModule, "projection rows must match the kernel size");
  }
}

}  // namespace

void validate(const LabeledSplit& split) {
  if (split.n_s < 1 || split.n_t < 1) {
    throw InvalidArgument(kModule, "both domains must be nonempty");
  }
  if (split.num_classes < 1) {
    throw InvalidArgument(kModule, "num_classes must be at least 1");
  }
  if (static_cast<Index>(split.source_labels.size()) != split.n_s) {
    throw LengthMismatch(kModule, "source labels must have length n_s");
  }
  check_labels(split.source_labels, split.num_classes, "source");
  if (split.target_labels_pred) {
    if (static_cast<Index>(split.target_labels_pred->size()) != split.n_t) {
      throw LengthMismatch(kModule, "target predictions must have length n_t");
    }
    check_labels(*split.target_labels_pred, split.num_classes, "target");
  }
}

Vector marginal_indicator(const LabeledSplit& split) {
  validate(split);
  Vector u(split.total());
  u.head(split.n_s).setConstant(1.0 / static_cast<double>(split.n_s));
  u.tail(split.n_t).setConstant(-1.0 / static_cast<double>(split.n_t));
  return u;
}

std::optional<Vector> class_indicator(const LabeledSplit& split, int c) {
  validate(split);
  if (c < 1 || c > split.num_classes) {
    throw InvalidArgument(kModule, "class id " + std::to_string(c) + " outside {1.." +
                                       std::to_string(split.num_classes) + "}");
  }
  if (!split.target_labels_pred) {
    throw MissingPredictions(kModule,
                             "conditional discrepancy needs target label predictions");
  }
  Index ns_c = 0;
  Index nt_c = 0;
  for (Index i = 0; i < split.n_s; ++i) {
    if (split.source_labels[static_cast<std::size_t>(i)] == c) ++ns_c;
  }
  for (Index j = 0; j < split.n_t; ++j) {
    if ((*split.target_labels_pred)[static_cast<std::size_t>(j)] == c) ++nt_c;
  }
  if (ns_c == 0 || nt_c == 0) {
    return std::nullopt;
  }
  Vector u = Vector::Zero(split.total());
  for (Index i = 0; i < split.n_s; ++i) {
    if (split.source_labels[static_cast<std::size_t>(i)] == c) {
      u(i) = 1.0 / static_cast<double>(ns_c);
    }
  }
  for (Index j = 0; j < split.n_t; ++j) {
    if ((*split.target_labels_pred)[static_cast<std::size_t>(j)] == c) {
      u(split.n_s + j) = -1.0 / static_cast<double>(nt_c);
    }
  }
  return u;
}

Matrix marginal_mmd(const LabeledSplit& split) {
  Vector u = marginal_indicator(split);
  return u * u.transpose();
}

std::optional<Matrix> conditional_mmd(const LabeledSplit& split, int c) {
  auto u = class_indicator(split, c);
  if (!u) return std::nullopt;
  return *u * u->transpose();
}

Matrix MmdMatrices::sum() const {
  Matrix total = m0;
  for (const auto& mc : per_class) {
    if (mc) total += *mc;
  }
  return total;
}

MmdMatrices build_mmd_matrices(const LabeledSplit& split) {
  MmdMatrices out;
  out.m0 = marginal_mmd(split);
  if (split.target_labels_pred) {
    out.per_class.reserve(static_cast<std::size_t>(split.num_classes));
    for (int c = 1; c <= split.num_classes; ++c) {
      out.per_class.push_back(conditional_mmd(split, c));
    }
  }
  return out;
}

double mmd_objective(const Matrix& a, const kernel::KernelMatrix& kern, const Matrix& m) {
  check_projection(a, kern);
  if (m.rows() != kern.gram.rows() || m.cols() != kern.gram.cols()) {
    throw DimensionMismatch(kModule, "discrepancy matrix must match the kernel size");
  }
  Matrix p = a.transpose() * kern.gram;
  return (p * m * p.transpose()).trace();
}

double direct_mmd_oracle(const Matrix& a, const kernel::KernelMatrix& kern,
                         const LabeledSplit& split) {
  validate(split);
  check_projection(a, kern);
  if (kern.gram.cols() != split.total()) {
    throw DimensionMismatch(kModule, "kernel size must match n_s + n_t");
  }
  const Index k = a.cols();
  Vector mean_s = Vector::Zero(k);
  Vector mean_t = Vector::Zero(k);
  for (Index i = 0; i < split.n_s; ++i) {
    mean_s += a.transpose() * kern.gram.col(i);
  }
  mean_s /= static_cast<double>(split.n_s);
  for (Index j = 0; j < split.n_t; ++j) {
    mean_t += a.transpose() * kern.gram.col(split.n_s + j);
  }
  mean_t /= static_cast<double>(split.n_t);
  return (mean_s - mean_t).squaredNorm();
}

std::optional<double> direct_mmd_oracle(const Matrix& a, const kernel::KernelMatrix& kern,
                                        const LabeledSplit& split, int c) {
  validate(split);
  check_projection(a, kern);
  if (kern.gram.cols() != split.total()) {
    throw DimensionMismatch(kModule, "kernel size must match n_s + n_t");
  }
  if (!split.target_labels_pred) {
    throw MissingPredictions(kModule,
                             "conditional discrepancy needs target label predictions");
  }
  const Index k = a.cols();
  Vector mean_s = Vector::Zero(k);
  Vector mean_t = Vector::Zero(k);
  Index ns_c = 0;
  Index nt_c = 0;
  for (Index i = 0; i < split.n_s; ++i) {
    if (split.source_labels[static_cast<std::size_t>(i)] == c) {
      mean_s += a.transpose() * kern.gram.col(i);
      ++ns_c;
    }
  }
  for (Index j = 0; j < split.n_t; ++j) {
    if ((*split.target_labels_pred)[static_cast<std::size_t>(j)] == c) {
      mean_t += a.transpose() * kern.gram.col(split.n_s + j);
      ++nt_c;
    }
  }
  if (ns_c == 0 || nt_c == 0) return std::nullopt;
  mean_s /= static_cast<double>(ns_c);
  mean_t /= static_cast<double>(nt_c);
  return (mean_s - mean_t).squaredNorm();
}

}  // namespace netadapt::mmd
