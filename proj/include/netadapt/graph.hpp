#pragma once

#include "netadapt/matrix.hpp"
#include "netadapt/mmd.hpp"

namespace netadapt::graph {

// Similarity graph over the concatenated sample: binary adjacency, its degree
// vector, and the symmetric normalized Laplacian l = I - D^-1/2 * W * D^-1/2.
struct GraphPieces {
  Matrix w;
  Vector degrees;
  Matrix l;
};

/// Binary adjacency over source labels: w_ij = 1 when i and j are both source
/// points with equal labels or i == j, else 0. Self-loops keep every degree
/// positive.
Matrix adjacency(const mmd::LabeledSplit& split);

/// Degree vector and normalized Laplacian of a symmetric nonnegative adjacency.
/// Throws ZeroDegree when a row sums to zero.
GraphPieces normalized_laplacian(const Matrix& w);

/// (1/2) * sum_ij w_ij * ||z_i / sqrt(d_i) - z_j / sqrt(d_j)||^2, evaluated by
/// direct summation over pairs. Reference value for tr(Z * L * Z^T).
double embedding_objective_oracle(const Matrix& z, const GraphPieces& pieces);

}  // namespace netadapt::graph
