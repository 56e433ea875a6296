#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netadapt/kernel.hpp"
#include "netadapt/matrix.hpp"
#include "netadapt/solver.hpp"

namespace netadapt::modelsel {

struct KmmConfig {
  double b_cap = 10.0;            // per-weight box bound, > 0
  std::optional<double> epsilon;  // empty: (sqrt(n_s) - 1) / sqrt(n_s)
  int max_iters = 2000;
  double step_tol = 1e-10;
};

struct KmmWeights {
  Vector w;
  double objective = 0.0;  // (1/2) w^T K_s w - kappa^T w
  bool feasible = false;
  double b_cap = 0.0;
  double epsilon = 0.0;
};

/// Source importance weights matching the source to the target in kernel mean:
/// minimize (1/2) w^T K_s w - kappa^T w with kappa_i = (n_s / n_t) * sum_j
/// k(x_i^s, x_j^t), subject to 0 <= w_i <= b_cap and |sum_i w_i - n_s| <=
/// n_s * epsilon. Solved by projected gradient descent with alternating
/// projection onto the box and the sum slab. Throws Infeasible when the box
/// cannot meet the sum constraint.
KmmWeights kmm_weights(const Matrix& x_source, const Matrix& x_target,
                       const kernel::KernelSpec& spec, const KmmConfig& cfg);

/// Splits source indices into (validation, rest): validation holds the
/// ceil(fraction * n_s) highest-weight points, ties to the lower index.
std::pair<std::vector<Index>, std::vector<Index>> select_validation(const KmmWeights& weights,
                                                                    double fraction = 0.10);

struct ParamGrid {
  std::vector<Index> k_values;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> gammas;
};

enum class Algo { net, jda };

struct GridCell {
  solver::HyperParams hp;
  std::optional<double> validation_accuracy;  // empty when the fit failed
  std::optional<double> target_accuracy;      // scoring labels supplied and fit succeeded
  std::string error;
};

struct GridSearchResult {
  solver::HyperParams best;
  Index best_cell = -1;
  std::vector<GridCell> table;
  KmmWeights weights;
  std::vector<Index> validation_indices;
  std::vector<Index> training_indices;
};

/// Weighted-validation grid search. The highest-weight source points are held
/// out, each cell fits on the remaining source against the full target, the
/// held-out points are projected through the cell's kernel map and scored with
/// the nearest-neighbor rule. Cells iterate k, then alpha, beta, gamma
/// (jda cells iterate k then gamma); the winner is the highest validation
/// accuracy, ties to the earlier cell. Per-cell failures are recorded, not
/// raised. y_target_for_scoring is only ever compared against predictions.
GridSearchResult grid_search(const Matrix& x_source, const std::vector<int>& y_source,
                             const Matrix& x_target, const kernel::KernelSpec& spec,
                             const ParamGrid& grid, const KmmConfig& cfg, Algo algo,
                             const std::vector<int>* y_target_for_scoring = nullptr,
                             int threads = 1);

}  // namespace netadapt::modelsel
