#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netadapt/data.hpp"
#include "netadapt/runner.hpp"

namespace {

using netadapt::cli::ExperimentConfig;

int read_thread_cap() {
  const char* raw = std::getenv("NET_ADAPT_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == nullptr || *end != '\0' || value < 1) {
    throw netadapt::ConfigError("cli", "NET_ADAPT_THREADS must be a positive integer, got '" +
                                           std::string(raw) + "'");
  }
  return static_cast<int>(value);
}

ExperimentConfig load_for_subcommand(const std::string& config_path,
                                     const std::optional<std::string>& profile,
                                     const std::optional<long long>& seed,
                                     const std::optional<std::string>& out) {
  ExperimentConfig cfg = netadapt::cli::load_config(config_path);
  if (profile) {
    if (cfg.grid) {
      throw netadapt::ConfigError(
          "cli", "--profile supplies fixed parameters; remove the [grid] section");
    }
    if (cfg.params) {
      throw netadapt::ConfigError(
          "cli", "--profile conflicts with the [params] section; use one");
    }
    cfg.params = netadapt::cli::profile_params(*profile);
  }
  if (seed) {
    if (*seed < 0) {
      throw netadapt::ConfigError("cli", "--seed must be nonnegative");
    }
    cfg.seeds = {static_cast<std::uint64_t>(*seed)};
  }
  if (out) cfg.output = *out;
  return cfg;
}

void emit(const netadapt::cli::Report& report, const ExperimentConfig& cfg) {
  if (cfg.output) {
    netadapt::cli::write_report(*cfg.output, report.records);
  }
  std::cout << report.human;
  if (cfg.output) {
    std::cout << "report written to " << *cfg.output << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel-embedding domain adaptation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> profile;
  std::optional<long long> seed;
  std::optional<std::string> out;

  auto add_common = [&](CLI::App* sub, bool wants_profile) {
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out, "report path (line-delimited JSON)");
    if (wants_profile) {
      std::string names;
      for (const auto& n : netadapt::cli::profile_names()) {
        if (!names.empty()) names += ", ";
        names += n;
      }
      sub->add_option("--profile", profile, "named parameter preset (" + names + ")");
    }
  };

  CLI::App* run = app.add_subcommand("run", "fit one algorithm and report accuracy");
  add_common(run, true);
  CLI::App* compare = app.add_subcommand("compare", "fit several algorithms across seeds");
  add_common(compare, true);
  CLI::App* grid = app.add_subcommand("grid", "weighted-validation parameter search");
  add_common(grid, false);

  CLI::App* gen = app.add_subcommand("gen-toy", "write a two-moon source/target CSV pair");
  long long gen_n = 100;
  double gen_noise = 0.1;
  double gen_rotation = 30.0;
  double gen_tx = 0.0;
  double gen_ty = 0.0;
  long long gen_seed = 0;
  std::string gen_prefix = "two-moon";
  gen->add_option("--n-per-class", gen_n, "points per class per domain");
  gen->add_option("--noise-sd", gen_noise, "coordinate noise");
  gen->add_option("--rotation-deg", gen_rotation, "target rotation");
  gen->add_option("--translate-x", gen_tx, "target x shift");
  gen->add_option("--translate-y", gen_ty, "target y shift");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out-prefix", gen_prefix, "output path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const int threads = read_thread_cap();
    if (run->parsed()) {
      ExperimentConfig cfg = load_for_subcommand(config_path, profile, seed, out);
      if (cfg.algorithms.size() != 1) {
        throw netadapt::ConfigError("cli", "run needs exactly one [experiment] algorithm");
      }
      emit(netadapt::cli::run_single(cfg, cfg.algorithms.front(), cfg.seeds.front()), cfg);
    } else if (compare->parsed()) {
      ExperimentConfig cfg = load_for_subcommand(config_path, profile, seed, out);
      emit(netadapt::cli::run_compare(cfg, threads), cfg);
    } else if (grid->parsed()) {
      ExperimentConfig cfg = load_for_subcommand(config_path, profile, seed, out);
      emit(netadapt::cli::run_grid(cfg, threads), cfg);
    } else if (gen->parsed()) {
      if (gen_n < 1) {
        throw netadapt::ConfigError("cli", "--n-per-class must be positive");
      }
      if (gen_seed < 0) {
        throw netadapt::ConfigError("cli", "--seed must be nonnegative");
      }
      netadapt::data::TwoMoonShift shift{gen_rotation, gen_tx, gen_ty};
      auto [source, target] = netadapt::data::two_moon(
          gen_n, gen_noise, shift, static_cast<std::uint64_t>(gen_seed));
      netadapt::data::save_csv(gen_prefix + "_source.csv", source);
      netadapt::data::save_csv(gen_prefix + "_target.csv", target);
      std::cout << "wrote " << gen_prefix << "_source.csv and " << gen_prefix
                << "_target.csv\n";
    }
  } catch (const netadapt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const netadapt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
