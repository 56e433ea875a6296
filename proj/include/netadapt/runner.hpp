#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netadapt/config.hpp"
#include "netadapt/data.hpp"

namespace netadapt::cli {

using Record = nlohmann::ordered_json;

// Machine report plus the rendered human table. All records are reproducible
// for a fixed config and seed except those with "record": "timing".
struct Report {
  std::vector<Record> records;
  std::string human;
};

struct LoadedData {
  data::Dataset source;
  data::Dataset target;
  bool has_target = false;
  std::optional<std::vector<int>> scoring_labels;  // stripped from target before fits
};

/// Builds the experiment data for one seed. Target labels, when present, are
/// moved into scoring_labels so fitting code never sees a labeled target.
LoadedData materialize(const ExperimentConfig& cfg, std::uint64_t seed);

/// Fits one algorithm once and reports per-pass diagnostics and accuracy.
Report run_single(const ExperimentConfig& cfg, const std::string& algo, std::uint64_t seed);

/// Fits every configured algorithm on every seed; one result row per pair,
/// best and second-best marked per seed, per-algorithm means appended.
Report run_compare(const ExperimentConfig& cfg, int threads);

/// Weighted-validation parameter search for the configured algorithm.
Report run_grid(const ExperimentConfig& cfg, int threads);

/// One JSON record per line.
void write_report(const std::string& path, const std::vector<Record>& records);

}  // namespace netadapt::cli
