#include "netadapt/classify.hpp"

namespace netadapt::classify {

namespace {
constexpr const char* kModule = "classify";
}

std::vector<int> one_nn_predict(const Matrix& z_train, const std::vector<int>& y_train,
                                const Matrix& z_test) {
  if (z_train.cols() == 0) {
    throw EmptyTrainingSet(kModule, "training set is empty");
  }
  if (static_cast<Index>(y_train.size()) != z_train.cols()) {
    throw LengthMismatch(kModule, "one label per training column required");
  }
  if (z_train.rows() != z_test.rows()) {
    throw DimensionMismatch(kModule, "train and test points must share the embedding dimension");
  }
  std::vector<int> predicted(static_cast<std::size_t>(z_test.cols()));
  for (Index j = 0; j < z_test.cols(); ++j) {
    Index best = 0;
    double best_d2 = (z_train.col(0) - z_test.col(j)).squaredNorm();
    for (Index i = 1; i < z_train.cols(); ++i) {
      double d2 = (z_train.col(i) - z_test.col(j)).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    predicted[static_cast<std::size_t>(j)] = y_train[static_cast<std::size_t>(best)];
  }
  return predicted;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) {
    throw LengthMismatch(kModule, "prediction and truth vectors must have equal length");
  }
  if (predicted.empty()) {
    throw LengthMismatch(kModule, "accuracy of an empty prediction set is undefined");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

}  // namespace netadapt::classify
