#include "netadapt/kmm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "netadapt/classify.hpp"

namespace netadapt::modelsel {

namespace {

constexpr const char* kModule = "model-selection";

double slab_clamp(double total, double lo, double hi) {
  return std::min(std::max(total, lo), hi);
}

// Projection onto {0 <= w <= cap} intersected with {lo <= sum(w) <= hi},
// alternating projections with correction terms until the iterate settles.
Vector project_box_slab(const Vector& v, double cap, double lo, double hi) {
  const Index n = v.size();
  Vector x = v;
  Vector p = Vector::Zero(n);
  Vector q = Vector::Zero(n);
  for (int iter = 0; iter < 500; ++iter) {
    Vector y = (x + p).cwiseMax(0.0).cwiseMin(cap);
    p = x + p - y;
    Vector yq = y + q;
    double total = yq.sum();
    double target = slab_clamp(total, lo, hi);
    Vector x_next = yq.array() + (target - total) / static_cast<double>(n);
    q = yq - x_next;
    double move = (x_next - x).lpNorm<Eigen::Infinity>();
    // The iterate can sit still while the correction terms keep shifting, so
    // only stop once the two set projections also agree with each other.
    double split = (x_next - y).lpNorm<Eigen::Infinity>();
    x = std::move(x_next);
    if (move < 1e-13 && split < 1e-12) break;
  }
  // The slab projection ran last; snap residual box violations of the order of
  // the alternating-projection tolerance.
  return x.cwiseMax(0.0).cwiseMin(cap);
}

double spectral_bound(const Matrix& k_s) {
  const Index n = k_s.rows();
  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    Vector next = k_s * v;
    double norm = next.norm();
    if (!(norm > 0.0)) break;
    next /= norm;
    double estimate = next.dot(k_s * next);
    if (iter > 0 && std::abs(estimate - lambda) <= 1e-10 * std::max(1.0, std::abs(estimate))) {
      lambda = estimate;
      break;
    }
    lambda = estimate;
    v = std::move(next);
  }
  return lambda;
}

}  // namespace

KmmWeights kmm_weights(const Matrix& x_source, const Matrix& x_target,
                       const kernel::KernelSpec& spec, const KmmConfig& cfg) {
  if (x_source.rows() != x_target.rows()) {
    throw DimensionMismatch(kModule, "source and target must share the feature dimension");
  }
  const Index n_s = x_source.cols();
  const Index n_t = x_target.cols();
  if (n_s < 1 || n_t < 1) {
    throw InvalidArgument(kModule, "both domains must be nonempty");
  }
  if (!(cfg.b_cap > 0.0)) {
    throw InvalidArgument(kModule, "b_cap must be positive");
  }
  const double eps =
      cfg.epsilon ? *cfg.epsilon
                  : (std::sqrt(static_cast<double>(n_s)) - 1.0) / std::sqrt(static_cast<double>(n_s));
  if (eps < 0.0) {
    throw InvalidArgument(kModule, "epsilon must be nonnegative");
  }
  if (cfg.b_cap * static_cast<double>(n_s) < static_cast<double>(n_s) * (1.0 - eps)) {
    throw Infeasible(kModule, "box bound " + std::to_string(cfg.b_cap) +
                                  " cannot reach the required weight sum with epsilon = " +
                                  std::to_string(eps));
  }

  // Bandwidth resolved over the concatenated sample, matching the adaptation kernel.
  kernel::KernelSpec resolved = spec;
  if (spec.kind == kernel::Kind::gaussian && !spec.bandwidth) {
    Matrix joint(x_source.rows(), n_s + n_t);
    joint << x_source, x_target;
    resolved.bandwidth = kernel::median_sq_dist(joint);
  }
  Matrix k_s = kernel::gram(x_source, resolved).gram;
  k_s.diagonal().array() += 1e-8;
  Matrix cross = kernel::cross_gram(x_source, x_target, resolved, resolved.bandwidth);
  Vector kappa = (static_cast<double>(n_s) / static_cast<double>(n_t)) * cross.rowwise().sum();

  const double lo = static_cast<double>(n_s) * (1.0 - eps);
  const double hi = static_cast<double>(n_s) * (1.0 + eps);
  const double lipschitz = std::max(spectral_bound(k_s), 1e-12);
  const double step = 1.0 / lipschitz;

  Vector w = project_box_slab(Vector::Ones(n_s), cfg.b_cap, lo, hi);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    Vector grad = k_s * w - kappa;
    Vector next = project_box_slab(w - step * grad, cfg.b_cap, lo, hi);
    double move = (next - w).norm();
    w = std::move(next);
    if (move <= cfg.step_tol) break;
  }

  KmmWeights out;
  out.objective = 0.5 * w.dot(k_s * w) - kappa.dot(w);
  double total = w.sum();
  out.feasible = (w.minCoeff() >= -1e-9) && (w.maxCoeff() <= cfg.b_cap + 1e-9) &&
                 (total >= lo - 1e-6 * static_cast<double>(n_s)) &&
                 (total <= hi + 1e-6 * static_cast<double>(n_s));
  out.w = std::move(w);
  out.b_cap = cfg.b_cap;
  out.epsilon = eps;
  return out;
}

std::pair<std::vector<Index>, std::vector<Index>> select_validation(const KmmWeights& weights,
                                                                    double fraction) {
  const Index n_s = weights.w.size();
  if (n_s < 1) {
    throw InvalidArgument(kModule, "weights must be nonempty");
  }
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw InvalidArgument(kModule, "fraction must be in (0, 1]");
  }
  const Index m = static_cast<Index>(
      std::ceil(fraction * static_cast<double>(n_s) - 1e-12));
  std::vector<Index> order(static_cast<std::size_t>(n_s));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (weights.w(a) != weights.w(b)) return weights.w(a) > weights.w(b);
    return a < b;
  });
  std::vector<Index> validation(order.begin(), order.begin() + m);
  std::vector<Index> rest(order.begin() + m, order.end());
  std::sort(validation.begin(), validation.end());
  std::sort(rest.begin(), rest.end());
  return {std::move(validation), std::move(rest)};
}

namespace {

std::vector<solver::HyperParams> expand_grid(const ParamGrid& grid, Algo algo) {
  if (grid.k_values.empty() || grid.gammas.empty() ||
      (algo == Algo::net && (grid.alphas.empty() || grid.betas.empty()))) {
    throw InvalidArgument(kModule, "every searched grid axis needs at least one value");
  }
  std::vector<solver::HyperParams> cells;
  for (Index k : grid.k_values) {
    if (algo == Algo::jda) {
      for (double gamma : grid.gammas) {
        solver::HyperParams hp;
        hp.alpha = 1.0;
        hp.beta = 0.0;
        hp.gamma = gamma;
        hp.k = k;
        cells.push_back(hp);
      }
      continue;
    }
    for (double alpha : grid.alphas) {
      for (double beta : grid.betas) {
        for (double gamma : grid.gammas) {
          solver::HyperParams hp;
          hp.alpha = alpha;
          hp.beta = beta;
          hp.gamma = gamma;
          hp.k = k;
          cells.push_back(hp);
        }
      }
    }
  }
  return cells;
}

template <typename Fn>
void run_cells(Index count, int threads, Fn&& body) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads == 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<Index> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        Index i = cursor.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

GridSearchResult grid_search(const Matrix& x_source, const std::vector<int>& y_source,
                             const Matrix& x_target, const kernel::KernelSpec& spec,
                             const ParamGrid& grid, const KmmConfig& cfg, Algo algo,
                             const std::vector<int>* y_target_for_scoring, int threads) {
  if (static_cast<Index>(y_source.size()) != x_source.cols()) {
    throw LengthMismatch(kModule, "one label per source point required");
  }
  GridSearchResult result;
  result.weights = kmm_weights(x_source, x_target, spec, cfg);
  auto [validation, rest] = select_validation(result.weights, 0.10);
  if (rest.empty()) {
    throw InvalidArgument(kModule, "validation split consumed every source point");
  }
  result.validation_indices = validation;
  result.training_indices = rest;

  Matrix x_train(x_source.rows(), static_cast<Index>(rest.size()));
  std::vector<int> y_train(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    x_train.col(static_cast<Index>(i)) = x_source.col(rest[i]);
    y_train[i] = y_source[static_cast<std::size_t>(rest[i])];
  }
  Matrix x_val(x_source.rows(), static_cast<Index>(validation.size()));
  std::vector<int> y_val(validation.size());
  for (std::size_t i = 0; i < validation.size(); ++i) {
    x_val.col(static_cast<Index>(i)) = x_source.col(validation[i]);
    y_val[i] = y_source[static_cast<std::size_t>(validation[i])];
  }
  Matrix x_fit(x_source.rows(), x_train.cols() + x_target.cols());
  x_fit << x_train, x_target;

  auto cells = expand_grid(grid, algo);
  result.table.resize(cells.size());

  run_cells(static_cast<Index>(cells.size()), threads, [&](Index i) {
    GridCell cell;
    cell.hp = cells[static_cast<std::size_t>(i)];
    try {
      solver::ProjectionResult fit =
          algo == Algo::jda
              ? solver::jda_fit(x_train, y_train, x_target, spec, cell.hp)
              : solver::net_fit(x_train, y_train, x_target, spec, cell.hp);
      Matrix cross = kernel::cross_gram(x_fit, x_val, spec, fit.resolved_bandwidth);
      Matrix z_val = fit.a.transpose() * cross;
      std::vector<int> pred = classify::one_nn_predict(fit.z.leftCols(x_train.cols()),
                                                       y_train, z_val);
      cell.validation_accuracy = classify::accuracy(pred, y_val);
      if (y_target_for_scoring != nullptr) {
        cell.target_accuracy =
            classify::accuracy(fit.target_label_history.back(), *y_target_for_scoring);
      }
    } catch (const Error& e) {
      cell.error = e.what();
    }
    result.table[static_cast<std::size_t>(i)] = std::move(cell);
  });

  for (Index i = 0; i < static_cast<Index>(result.table.size()); ++i) {
    const auto& cell = result.table[static_cast<std::size_t>(i)];
    if (!cell.validation_accuracy) continue;
    if (result.best_cell < 0 ||
        *cell.validation_accuracy >
            *result.table[static_cast<std::size_t>(result.best_cell)].validation_accuracy) {
      result.best_cell = i;
    }
  }
  if (result.best_cell < 0) {
    throw NoConvergence(kModule, "every grid cell failed");
  }
  result.best = result.table[static_cast<std::size_t>(result.best_cell)].hp;
  return result;
}

}  // namespace netadapt::modelsel
