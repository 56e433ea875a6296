#pragma once

#include <optional>
#include <vector>

#include "netadapt/kernel.hpp"
#include "netadapt/matrix.hpp"

namespace netadapt::mmd {

// Concatenated view of one adaptation problem: columns 0..n_s-1 of the kernel
// matrix are source points, columns n_s..n_s+n_t-1 are target points. Labels
// are class ids in {1..num_classes}; target labels are predictions refreshed
// between refinement passes and absent before the first pass.
struct LabeledSplit {
  Index n_s = 0;
  Index n_t = 0;
  std::vector<int> source_labels;
  std::optional<std::vector<int>> target_labels_pred;
  int num_classes = 0;

  Index total() const { return n_s + n_t; }
};

void validate(const LabeledSplit& split);

/// Coefficient vector u with u_i = 1/n_s on source, -1/n_t on target entries.
Vector marginal_indicator(const LabeledSplit& split);

/// Per-class coefficient vector for class c, or empty when either domain has
/// no point of class c. Throws MissingPredictions without target predictions.
std::optional<Vector> class_indicator(const LabeledSplit& split, int c);

/// Marginal discrepancy matrix M0 = u * u^T.
Matrix marginal_mmd(const LabeledSplit& split);

/// Class-conditional discrepancy matrix M_c, empty when class c is missing in
/// either domain.
std::optional<Matrix> conditional_mmd(const LabeledSplit& split, int c);

// Discrepancy matrices for one refinement pass: the marginal matrix plus every
// constructible class-conditional matrix. per_class[c - 1] belongs to class c.
struct MmdMatrices {
  Matrix m0;
  std::vector<std::optional<Matrix>> per_class;

  /// m0 plus all constructible per-class matrices.
  Matrix sum() const;
};

/// Builds M0 and, once target predictions exist, all constructible M_c.
MmdMatrices build_mmd_matrices(const LabeledSplit& split);

/// tr(A^T * K * M * K^T * A).
double mmd_objective(const Matrix& a, const kernel::KernelMatrix& kern, const Matrix& m);

/// Squared distance between projected domain means, computed by explicit
/// column sums: ||mean_s(A^T k_i) - mean_t(A^T k_j)||^2. Reference value for
/// mmd_objective with the marginal matrix.
double direct_mmd_oracle(const Matrix& a, const kernel::KernelMatrix& kern,
                         const LabeledSplit& split);

/// Per-class variant restricted to points labeled c; empty when class c is
/// missing in either domain.
std::optional<double> direct_mmd_oracle(const Matrix& a, const kernel::KernelMatrix& kern,
                                        const LabeledSplit& split, int c);

}  // namespace netadapt::mmd
