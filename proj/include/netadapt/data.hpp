#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netadapt/matrix.hpp"

namespace netadapt::data {

enum class Role { source, target };

// One domain: features column-per-point, labels contiguous in {1..C} over the
// vocabulary of original ids. vocabulary[c - 1] is the original id of class c.
struct Dataset {
  Matrix features;
  std::optional<std::vector<int>> labels;
  std::vector<long long> vocabulary;
  std::string name;
  Role role = Role::source;

  Index dim() const { return features.rows(); }
  Index count() const { return features.cols(); }
};

/// Reads a rectangular numeric CSV, one row per point, transposed on load.
/// A non-numeric first row is treated as a header and skipped. With has_labels
/// the last column must hold integer class ids, remapped to contiguous {1..C}.
Dataset load_csv(const std::string& path, bool has_labels);

/// Writes one row per point with 17 significant digits; labels (original ids)
/// as a final column when present. load_csv(save_csv(ds)) round-trips exactly.
void save_csv(const std::string& path, const Dataset& ds);

/// Remaps both label sets onto the union of the two vocabularies so equal
/// original ids share one class index.
void align_vocabularies(Dataset& a, Dataset& b);

struct TwoMoonShift {
  double rotation_deg = 30.0;
  double translate_x = 0.0;
  double translate_y = 0.0;
};

/// Two interleaving half-circles (radius 1, unit offset) with n_per_class
/// points per class and gaussian coordinate noise. The target domain is an
/// independent draw from the same distribution, rotated then translated.
/// Output is bit-identical for a fixed seed.
std::pair<Dataset, Dataset> two_moon(Index n_per_class, double noise_sd,
                                     const TwoMoonShift& shift, std::uint64_t seed);

// Principal directions of mean-centered data; components hold one unit-norm
// direction per column, ordered by decreasing variance, sign fixed so the
// largest-magnitude coordinate is positive.
struct PcaModel {
  Vector mean;
  Matrix components;

  Matrix transform(const Matrix& x) const;
  Matrix reconstruct(const Matrix& z) const;
};

PcaModel pca_fit(const Matrix& x, Index target_dim);

/// Mean-centered projection onto the top target_dim principal directions.
Matrix pca_reduce(const Matrix& x, Index target_dim);

}  // namespace netadapt::data
