#include "netadapt/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "netadapt/classify.hpp"

namespace netadapt::cli {

namespace {

constexpr const char* kModule = "cli";

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

std::string percent(double fraction) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << 100.0 * fraction;
  return os.str();
}

Record config_record(const ExperimentConfig& cfg, const std::string& subcommand) {
  Record r;
  r["record"] = "config";
  r["subcommand"] = subcommand;
  if (cfg.algorithms.size() == 1) {
    r["algorithm"] = cfg.algorithms.front();
  } else {
    r["algorithms"] = cfg.algorithms;
  }
  if (cfg.seeds.size() == 1) {
    r["seed"] = cfg.seeds.front();
  } else {
    r["seeds"] = cfg.seeds;
  }
  Record kern;
  kern["kind"] = cfg.kspec.kind == kernel::Kind::gaussian ? "gaussian" : "linear";
  if (cfg.kspec.bandwidth) {
    kern["bandwidth"] = *cfg.kspec.bandwidth;
  } else {
    kern["bandwidth"] = "median";
  }
  r["kernel"] = kern;
  if (cfg.generator) {
    Record g;
    g["generator"] = "two-moon";
    g["n_per_class"] = cfg.generator->n_per_class;
    g["noise_sd"] = cfg.generator->noise_sd;
    g["rotation_deg"] = cfg.generator->rotation_deg;
    g["translate"] = {cfg.generator->translate_x, cfg.generator->translate_y};
    r["data"] = g;
  } else if (cfg.files) {
    Record f;
    f["source"] = cfg.files->source_path;
    f["source_labels"] = cfg.files->source_has_labels;
    if (cfg.files->target_path) {
      f["target"] = *cfg.files->target_path;
      f["target_labels"] = cfg.files->target_has_labels;
    }
    r["data"] = f;
  }
  if (cfg.params) {
    Record p;
    p["alpha"] = cfg.params->alpha;
    p["beta"] = cfg.params->beta;
    p["gamma"] = cfg.params->gamma;
    p["k"] = cfg.params->k;
    p["iterations"] = cfg.params->iterations;
    if (cfg.params->ridge) {
      p["ridge"] = *cfg.params->ridge;
    } else {
      p["ridge"] = "auto";
    }
    r["params"] = p;
  }
  if (cfg.grid) {
    Record g;
    g["k"] = cfg.grid->k_values;
    g["alpha"] = cfg.grid->alphas;
    g["beta"] = cfg.grid->betas;
    g["gamma"] = cfg.grid->gammas;
    r["grid"] = g;
    Record kmm;
    kmm["b_cap"] = cfg.kmm.b_cap;
    if (cfg.kmm.epsilon) {
      kmm["epsilon"] = *cfg.kmm.epsilon;
    } else {
      kmm["epsilon"] = "auto";
    }
    kmm["max_iters"] = cfg.kmm.max_iters;
    kmm["step_tol"] = cfg.kmm.step_tol;
    r["kmm"] = kmm;
  }
  return r;
}

Record data_record(const LoadedData& data, std::uint64_t seed) {
  Record r;
  r["record"] = "data";
  r["seed"] = seed;
  r["dim"] = data.source.dim();
  r["n_source"] = data.source.count();
  r["n_target"] = data.has_target ? data.target.count() : 0;
  int classes = 0;
  if (data.source.labels) {
    for (int y : *data.source.labels) classes = std::max(classes, y);
  }
  r["classes"] = classes;
  return r;
}

struct FitOutcome {
  solver::ProjectionResult fit;
  std::vector<int> target_predictions;
  std::optional<double> target_accuracy;
};

// All algorithms funnel through here; only unlabeled target features cross
// this boundary, scoring labels stay behind in LoadedData.
FitOutcome fit_algorithm(const std::string& algo, const LoadedData& data,
                         const kernel::KernelSpec& kspec, const solver::HyperParams& hp) {
  FitOutcome out;
  if (algo == "kpca") {
    Matrix x;
    if (data.has_target) {
      x.resize(data.source.dim(), data.source.count() + data.target.count());
      x << data.source.features, data.target.features;
    } else {
      x = data.source.features;
    }
    out.fit = solver::kpca_fit(x, kspec, hp.k);
    if (data.has_target && data.source.labels) {
      out.target_predictions = classify::one_nn_predict(
          out.fit.z.leftCols(data.source.count()), *data.source.labels,
          out.fit.z.rightCols(data.target.count()));
    }
  } else {
    if (!data.has_target) {
      throw ConfigError(kModule, "algorithm '" + algo + "' needs a target dataset");
    }
    if (!data.source.labels) {
      throw ConfigError(kModule, "algorithm '" + algo + "' needs source labels");
    }
    if (algo == "net") {
      out.fit = solver::net_fit(data.source.features, *data.source.labels,
                                data.target.features, kspec, hp);
    } else if (algo == "jda") {
      out.fit = solver::jda_fit(data.source.features, *data.source.labels,
                                data.target.features, kspec, hp);
    } else if (algo == "tca") {
      out.fit = solver::tca_fit(data.source.features, *data.source.labels,
                                data.target.features, kspec, hp);
    } else {
      throw ConfigError(kModule, "unknown algorithm '" + algo + "'");
    }
    out.target_predictions = out.fit.target_label_history.back();
  }
  if (!out.target_predictions.empty() && data.scoring_labels) {
    out.target_accuracy = classify::accuracy(out.target_predictions, *data.scoring_labels);
  }
  return out;
}

solver::HyperParams require_params(const ExperimentConfig& cfg, const char* subcommand) {
  if (cfg.grid) {
    throw ConfigError(kModule, std::string(subcommand) +
                                   " uses fixed parameters; replace [grid] with [params] or "
                                   "use the grid subcommand");
  }
  if (!cfg.params) {
    throw ConfigError(kModule,
                      std::string(subcommand) + " needs a [params] section or --profile");
  }
  return *cfg.params;
}

}  // namespace

LoadedData materialize(const ExperimentConfig& cfg, std::uint64_t seed) {
  LoadedData out;
  if (cfg.generator) {
    const auto& g = *cfg.generator;
    data::TwoMoonShift shift{g.rotation_deg, g.translate_x, g.translate_y};
    auto [source, target] = data::two_moon(g.n_per_class, g.noise_sd, shift, seed);
    out.source = std::move(source);
    out.target = std::move(target);
    out.has_target = true;
  } else if (cfg.files) {
    const auto& f = *cfg.files;
    out.source = data::load_csv(f.source_path, f.source_has_labels);
    out.source.role = data::Role::source;
    if (f.target_path) {
      out.target = data::load_csv(*f.target_path, f.target_has_labels);
      out.target.role = data::Role::target;
      out.has_target = true;
      if (out.source.labels && out.target.labels) {
        data::align_vocabularies(out.source, out.target);
      }
      if (out.source.dim() != out.target.dim()) {
        std::string msg = "source and target feature dimensions differ";
        if (!f.target_has_labels && out.target.dim() == out.source.dim() + 1) {
          msg += "; if the target csv carries a label row, set target_labels = true";
        }
        throw ConfigError(kModule, msg);
      }
    }
  } else {
    throw ConfigError(kModule, "config has no data description");
  }
  if (out.has_target) {
    // Scoring guard: fits receive a target with no labels attached.
    out.scoring_labels = std::move(out.target.labels);
    out.target.labels.reset();
  }
  return out;
}

Report run_single(const ExperimentConfig& cfg, const std::string& algo, std::uint64_t seed) {
  solver::HyperParams hp = require_params(cfg, "run");
  Stopwatch watch;
  LoadedData data = materialize(cfg, seed);

  Report report;
  ExperimentConfig echo = cfg;
  echo.algorithms = {algo};
  echo.seeds = {seed};
  report.records.push_back(config_record(echo, "run"));
  report.records.push_back(data_record(data, seed));

  FitOutcome outcome = fit_algorithm(algo, data, cfg.kspec, hp);

  Record bw;
  bw["record"] = "bandwidth";
  if (outcome.fit.resolved_bandwidth) {
    bw["resolved"] = *outcome.fit.resolved_bandwidth;
  } else {
    bw["resolved"] = nullptr;
  }
  report.records.push_back(bw);

  for (std::size_t i = 0; i < outcome.fit.target_label_history.size(); ++i) {
    Record it;
    it["record"] = "iteration";
    it["index"] = i + 1;
    it["discrepancy"] = outcome.fit.objective_history[i].first;
    it["embedding"] = outcome.fit.objective_history[i].second;
    if (data.scoring_labels) {
      it["pseudo_label_accuracy"] =
          classify::accuracy(outcome.fit.target_label_history[i], *data.scoring_labels);
    } else {
      it["pseudo_label_accuracy"] = nullptr;
    }
    report.records.push_back(it);
  }

  Record res;
  res["record"] = "result";
  res["algorithm"] = algo;
  res["seed"] = seed;
  if (outcome.target_accuracy) {
    res["target_accuracy"] = *outcome.target_accuracy;
  } else {
    res["target_accuracy"] = nullptr;
  }
  res["embedding_dim"] = outcome.fit.a.cols();
  res["ridge"] = outcome.fit.ridge_used;
  res["eigenvalues"] = std::vector<double>(
      outcome.fit.eigenvalues.data(),
      outcome.fit.eigenvalues.data() + outcome.fit.eigenvalues.size());
  report.records.push_back(res);

  double elapsed = watch.seconds();
  Record timing;
  timing["record"] = "timing";
  timing["wall_seconds"] = elapsed;
  report.records.push_back(timing);

  std::ostringstream os;
  os << "algorithm        " << algo << "\n";
  os << "seed             " << seed << "\n";
  os << "points           source " << data.source.count() << ", target "
     << (data.has_target ? data.target.count() : 0) << ", dim " << data.source.dim() << "\n";
  if (outcome.fit.resolved_bandwidth) {
    os << "bandwidth        " << *outcome.fit.resolved_bandwidth << "\n";
  }
  if (!outcome.fit.target_label_history.empty()) {
    os << "pass  discrepancy   embedding     pseudo-acc\n";
    for (std::size_t i = 0; i < outcome.fit.target_label_history.size(); ++i) {
      os << std::setw(4) << i + 1 << "  " << std::scientific << std::setprecision(4)
         << outcome.fit.objective_history[i].first << "   "
         << outcome.fit.objective_history[i].second << std::defaultfloat;
      if (data.scoring_labels) {
        os << "    "
           << percent(classify::accuracy(outcome.fit.target_label_history[i],
                                         *data.scoring_labels));
      }
      os << "\n";
    }
  }
  if (outcome.target_accuracy) {
    os << "target accuracy  " << percent(*outcome.target_accuracy) << "%\n";
  }
  os << "wall time        " << std::fixed << std::setprecision(2) << elapsed
     << " s (volatile)\n";
  report.human = os.str();
  return report;
}

Report run_compare(const ExperimentConfig& cfg, int threads) {
  solver::HyperParams hp = require_params(cfg, "compare");
  if (cfg.algorithms.empty()) {
    throw ConfigError(kModule, "compare needs [experiment] algorithms");
  }
  // Configs built in code may omit seeds; mirror the file parser's default.
  const std::vector<std::uint64_t> seeds =
      cfg.seeds.empty() ? std::vector<std::uint64_t>{0} : cfg.seeds;
  Stopwatch watch;

  struct Cell {
    std::size_t seed_index;
    std::size_t algo_index;
    std::optional<double> accuracy;
    std::string error;
  };
  std::vector<LoadedData> datasets;
  datasets.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    datasets.push_back(materialize(cfg, seed));
  }
  std::vector<Cell> cells;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
      cells.push_back(Cell{si, ai, std::nullopt, ""});
    }
  }

  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
  std::atomic<std::size_t> cursor{0};
  auto body = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      Cell& cell = cells[i];
      try {
        FitOutcome outcome = fit_algorithm(cfg.algorithms[cell.algo_index],
                                           datasets[cell.seed_index], cfg.kspec, hp);
        cell.accuracy = outcome.target_accuracy;
      } catch (const Error& e) {
        cell.error = e.what();
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }

  Report report;
  report.records.push_back(config_record(cfg, "compare"));
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    report.records.push_back(data_record(datasets[si], seeds[si]));
  }

  // Per-seed ranks: best and runner-up by accuracy, earlier algorithm on ties.
  std::vector<std::string> marks(cells.size());
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    std::vector<std::size_t> here;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].seed_index == si && cells[i].accuracy) here.push_back(i);
    }
    std::sort(here.begin(), here.end(), [&](std::size_t a, std::size_t b) {
      if (*cells[a].accuracy != *cells[b].accuracy) {
        return *cells[a].accuracy > *cells[b].accuracy;
      }
      return cells[a].algo_index < cells[b].algo_index;
    });
    if (!here.empty()) marks[here[0]] = "best";
    if (here.size() > 1) marks[here[1]] = "2nd";
  }

  std::ostringstream os;
  os << "seed        algorithm  accuracy%  rank\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    Record r;
    r["record"] = "result";
    r["seed"] = seeds[cell.seed_index];
    r["algorithm"] = cfg.algorithms[cell.algo_index];
    if (cell.accuracy) {
      r["target_accuracy"] = *cell.accuracy;
    } else {
      r["target_accuracy"] = nullptr;
    }
    if (!cell.error.empty()) r["error"] = cell.error;
    if (!marks[i].empty()) r["rank"] = marks[i];
    report.records.push_back(r);

    os << std::setw(10) << seeds[cell.seed_index] << "  " << std::setw(9) << std::left
       << cfg.algorithms[cell.algo_index] << std::right << "  ";
    if (cell.accuracy) {
      os << std::setw(9) << percent(*cell.accuracy);
    } else {
      os << std::setw(9) << "fail";
    }
    if (!marks[i].empty()) os << "  " << marks[i];
    os << "\n";
  }

  os << "----\n";
  for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
    double total = 0.0;
    int count = 0;
    for (const Cell& cell : cells) {
      if (cell.algo_index == ai && cell.accuracy) {
        total += *cell.accuracy;
        ++count;
      }
    }
    Record r;
    r["record"] = "summary";
    r["algorithm"] = cfg.algorithms[ai];
    if (count > 0) {
      r["mean_target_accuracy"] = total / count;
      r["runs"] = count;
      os << "mean        " << std::setw(9) << std::left << cfg.algorithms[ai] << std::right
         << "  " << std::setw(9) << percent(total / count) << "\n";
    } else {
      r["mean_target_accuracy"] = nullptr;
      r["runs"] = 0;
      os << "mean        " << std::setw(9) << std::left << cfg.algorithms[ai] << std::right
         << "  " << std::setw(9) << "fail" << "\n";
    }
    report.records.push_back(r);
  }

  double elapsed = watch.seconds();
  Record timing;
  timing["record"] = "timing";
  timing["wall_seconds"] = elapsed;
  report.records.push_back(timing);
  os << "wall time   " << std::fixed << std::setprecision(2) << elapsed << " s (volatile)\n";
  report.human = os.str();
  return report;
}

Report run_grid(const ExperimentConfig& cfg, int threads) {
  if (!cfg.grid) {
    throw ConfigError(kModule, "grid needs a [grid] section");
  }
  if (cfg.params) {
    throw ConfigError(kModule, "grid searches parameters; remove the [params] section");
  }
  if (cfg.algorithms.size() != 1 ||
      (cfg.algorithms.front() != "net" && cfg.algorithms.front() != "jda")) {
    throw ConfigError(kModule, "grid needs [experiment] algorithm = net or jda");
  }
  const auto algo =
      cfg.algorithms.front() == "net" ? modelsel::Algo::net : modelsel::Algo::jda;
  const std::uint64_t seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();
  Stopwatch watch;
  LoadedData data = materialize(cfg, seed);
  if (!data.has_target) {
    throw ConfigError(kModule, "grid needs a target dataset");
  }
  if (!data.source.labels) {
    throw ConfigError(kModule, "grid needs source labels");
  }

  modelsel::GridSearchResult search = modelsel::grid_search(
      data.source.features, *data.source.labels, data.target.features, cfg.kspec, *cfg.grid,
      cfg.kmm, algo, data.scoring_labels ? &*data.scoring_labels : nullptr, threads);

  Report report;
  report.records.push_back(config_record(cfg, "grid"));
  report.records.push_back(data_record(data, seed));

  Record kmm;
  kmm["record"] = "kmm";
  kmm["objective"] = search.weights.objective;
  kmm["feasible"] = search.weights.feasible;
  kmm["b_cap"] = search.weights.b_cap;
  kmm["epsilon"] = search.weights.epsilon;
  kmm["weight_sum"] = search.weights.w.sum();
  kmm["weights"] = std::vector<double>(search.weights.w.data(),
                                       search.weights.w.data() + search.weights.w.size());
  report.records.push_back(kmm);

  Record val;
  val["record"] = "validation";
  val["indices"] = search.validation_indices;
  report.records.push_back(val);

  std::ostringstream os;
  os << "cell  k     alpha     beta      gamma     val-acc%  tgt-acc%\n";
  for (std::size_t i = 0; i < search.table.size(); ++i) {
    const auto& cell = search.table[i];
    Record r;
    r["record"] = "cell";
    r["index"] = i;
    r["k"] = cell.hp.k;
    r["alpha"] = cell.hp.alpha;
    r["beta"] = cell.hp.beta;
    r["gamma"] = cell.hp.gamma;
    if (cell.validation_accuracy) {
      r["validation_accuracy"] = *cell.validation_accuracy;
    } else {
      r["validation_accuracy"] = nullptr;
    }
    if (cell.target_accuracy) {
      r["target_accuracy"] = *cell.target_accuracy;
    } else {
      r["target_accuracy"] = nullptr;
    }
    if (!cell.error.empty()) r["error"] = cell.error;
    report.records.push_back(r);

    os << std::setw(4) << i << "  " << std::setw(4) << std::left << cell.hp.k << std::right
       << " " << std::setw(9) << cell.hp.alpha << " " << std::setw(9) << cell.hp.beta << " "
       << std::setw(9) << cell.hp.gamma << " ";
    if (cell.validation_accuracy) {
      os << std::setw(9) << percent(*cell.validation_accuracy);
    } else {
      os << std::setw(9) << "fail";
    }
    if (cell.target_accuracy) {
      os << " " << std::setw(9) << percent(*cell.target_accuracy);
    }
    os << "\n";
  }

  Record sel;
  sel["record"] = "selected";
  sel["cell"] = search.best_cell;
  sel["k"] = search.best.k;
  sel["alpha"] = search.best.alpha;
  sel["beta"] = search.best.beta;
  sel["gamma"] = search.best.gamma;
  report.records.push_back(sel);
  os << "selected cell " << search.best_cell << ": k=" << search.best.k
     << " alpha=" << search.best.alpha << " beta=" << search.best.beta
     << " gamma=" << search.best.gamma << "\n";

  double elapsed = watch.seconds();
  Record timing;
  timing["record"] = "timing";
  timing["wall_seconds"] = elapsed;
  report.records.push_back(timing);
  os << "wall time " << std::fixed << std::setprecision(2) << elapsed << " s (volatile)\n";
  report.human = os.str();
  return report;
}

void write_report(const std::string& path, const std::vector<Record>& records) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError(kModule, "cannot write report to '" + path + "'");
  }
  for (const auto& record : records) {
    out << record.dump() << "\n";
  }
  if (!out) {
    throw ConfigError(kModule, "write to '" + path + "' failed");
  }
}

}  // namespace netadapt::cli
