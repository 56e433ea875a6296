#pragma once

#include <vector>

#include "netadapt/matrix.hpp"

namespace netadapt::classify {

/// Nearest-neighbor labels for the columns of z_test, Euclidean distance over
/// the columns of z_train. Distance ties resolve to the lowest training index.
std::vector<int> one_nn_predict(const Matrix& z_train, const std::vector<int>& y_train,
                                const Matrix& z_test);

/// Fraction of matching entries.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace netadapt::classify
