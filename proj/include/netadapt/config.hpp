#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netadapt/kernel.hpp"
#include "netadapt/kmm.hpp"
#include "netadapt/solver.hpp"

namespace netadapt::cli {

struct GeneratorConfig {
  Index n_per_class = 100;
  double noise_sd = 0.1;
  double rotation_deg = 30.0;
  double translate_x = 0.0;
  double translate_y = 0.0;
};

struct FileConfig {
  std::string source_path;
  bool source_has_labels = true;
  std::optional<std::string> target_path;
  bool target_has_labels = false;
};

// Parsed experiment file. Exactly one of params/grid survives validation, and
// exactly one of generator/files describes the data.
struct ExperimentConfig {
  std::vector<std::string> algorithms;
  std::vector<std::uint64_t> seeds;
  std::optional<std::string> output;
  std::optional<GeneratorConfig> generator;
  std::optional<FileConfig> files;
  kernel::KernelSpec kspec;
  std::optional<solver::HyperParams> params;
  std::optional<modelsel::ParamGrid> grid;
  modelsel::KmmConfig kmm;
};

/// Parses the flat sectioned key = value experiment format. Unknown sections or
/// keys, malformed values, or a config declaring both fixed parameters and a
/// search grid raise ConfigError.
ExperimentConfig load_config(const std::string& path);

/// Named parameter presets. Throws ConfigError for unknown names.
solver::HyperParams profile_params(const std::string& name);

/// Sorted preset names, for help text.
std::vector<std::string> profile_names();

}  // namespace netadapt::cli
