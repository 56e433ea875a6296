#include "netadapt/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "netadapt/linalg.hpp"

namespace netadapt::data {

namespace {

constexpr const char* kModule = "data-io";

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    cells.push_back(trim(cur));
  }
  if (!line.empty() && line.back() == ',') {
    cells.push_back("");
  }
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Remaps raw ids to contiguous {1..C} over the ascending vocabulary.
void remap_labels(const std::vector<long long>& raw, Dataset& ds) {
  std::vector<long long> vocab = raw;
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  std::map<long long, int> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    index[vocab[i]] = static_cast<int>(i) + 1;
  }
  std::vector<int> labels(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    labels[i] = index[raw[i]];
  }
  ds.labels = std::move(labels);
  ds.vocabulary = std::move(vocab);
}

// Deterministic uniform/normal draws; fixed algorithm so output is identical
// across standard library implementations.
struct Rng {
  std::mt19937_64 engine;
  bool have_spare = false;
  double spare = 0.0;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform01() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    double u = 0.0;
    do {
      u = uniform01();
    } while (u <= 0.0);
    double v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 2.0 * M_PI * v;
    spare = r * std::sin(a);
    have_spare = true;
    return r * std::cos(a);
  }
};

}  // namespace

Dataset load_csv(const std::string& path, bool has_labels) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(kModule, "cannot open '" + path + "'");
  }
  std::vector<std::vector<double>> rows;
  std::vector<long long> raw_labels;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_cells(line);

    if (first_content_row) {
      bool all_numeric = true;
      double tmp = 0.0;
      for (const auto& cell : cells) {
        if (!parse_double(cell, tmp)) {
          all_numeric = false;
          break;
        }
      }
      if (!all_numeric) {
        first_content_row = false;  // header row, skip
        continue;
      }
    }

    if (rows.empty()) {
      width = cells.size();
      if (width < (has_labels ? 2u : 1u)) {
        throw ParseError(kModule, "row " + std::to_string(line_no) + " has too few columns");
      }
    } else if (cells.size() != width) {
      throw RaggedRows(kModule, "row " + std::to_string(line_no) + " has " +
                                    std::to_string(cells.size()) + " columns, expected " +
                                    std::to_string(width));
    }

    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(cells[c], row[c])) {
        throw ParseError(kModule, "row " + std::to_string(line_no) + ", column " +
                                      std::to_string(c + 1) + ": cannot parse '" + cells[c] +
                                      "' as a finite number");
      }
    }
    if (has_labels) {
      double v = row.back();
      double r = std::round(v);
      if (std::abs(v - r) > 1e-9 || std::abs(r) > 9.2e18) {
        throw NonIntegerLabel(kModule, "row " + std::to_string(line_no) +
                                           ": label '" + cells.back() + "' is not an integer");
      }
      raw_labels.push_back(static_cast<long long>(r));
      row.pop_back();
    }
    rows.push_back(std::move(row));
    first_content_row = false;
  }
  if (rows.empty()) {
    throw ParseError(kModule, "'" + path + "' contains no data rows");
  }

  Dataset ds;
  const Index n = static_cast<Index>(rows.size());
  const Index d = static_cast<Index>(rows.front().size());
  ds.features.resize(d, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < d; ++i) {
      ds.features(i, j) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }
  if (has_labels) {
    remap_labels(raw_labels, ds);
  }
  ds.name = path;
  return ds;
}

void save_csv(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError(kModule, "cannot write '" + path + "'");
  }
  out << std::setprecision(17);
  for (Index j = 0; j < ds.count(); ++j) {
    for (Index i = 0; i < ds.dim(); ++i) {
      if (i > 0) out << ',';
      out << ds.features(i, j);
    }
    if (ds.labels) {
      long long id = ds.vocabulary[static_cast<std::size_t>(
          (*ds.labels)[static_cast<std::size_t>(j)] - 1)];
      out << ',' << id;
    }
    out << '\n';
  }
  if (!out) {
    throw ParseError(kModule, "write to '" + path + "' failed");
  }
}

void align_vocabularies(Dataset& a, Dataset& b) {
  if (!a.labels || !b.labels) {
    throw InvalidArgument(kModule, "both datasets must be labeled to align vocabularies");
  }
  std::vector<long long> joint = a.vocabulary;
  joint.insert(joint.end(), b.vocabulary.begin(), b.vocabulary.end());
  std::sort(joint.begin(), joint.end());
  joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
  std::map<long long, int> index;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    index[joint[i]] = static_cast<int>(i) + 1;
  }
  auto rewrite = [&](Dataset& ds) {
    for (auto& y : *ds.labels) {
      y = index[ds.vocabulary[static_cast<std::size_t>(y - 1)]];
    }
    ds.vocabulary = joint;
  };
  rewrite(a);
  rewrite(b);
}

std::pair<Dataset, Dataset> two_moon(Index n_per_class, double noise_sd,
                                     const TwoMoonShift& shift, std::uint64_t seed) {
  if (n_per_class < 1) {
    throw InvalidArgument(kModule, "n_per_class must be at least 1");
  }
  if (noise_sd < 0.0) {
    throw InvalidArgument(kModule, "noise_sd must be nonnegative");
  }
  Rng rng(seed);
  const double theta = shift.rotation_deg * M_PI / 180.0;
  const double ct = std::cos(theta);
  const double st = std::sin(theta);

  auto draw_domain = [&](bool transformed) {
    Dataset ds;
    ds.features.resize(2, 2 * n_per_class);
    std::vector<int> labels(static_cast<std::size_t>(2 * n_per_class));
    for (Index j = 0; j < 2 * n_per_class; ++j) {
      const bool upper = j < n_per_class;
      const double t = M_PI * rng.uniform01();
      double x = upper ? std::cos(t) : 1.0 - std::cos(t);
      double y = upper ? std::sin(t) : 0.5 - std::sin(t);
      x += noise_sd * rng.normal();
      y += noise_sd * rng.normal();
      if (transformed) {
        const double rx = ct * x - st * y;
        const double ry = st * x + ct * y;
        x = rx + shift.translate_x;
        y = ry + shift.translate_y;
      }
      ds.features(0, j) = x;
      ds.features(1, j) = y;
      labels[static_cast<std::size_t>(j)] = upper ? 1 : 2;
    }
    ds.labels = std::move(labels);
    ds.vocabulary = {1, 2};
    return ds;
  };

  Dataset source = draw_domain(false);
  source.name = "two-moon-source";
  source.role = Role::source;
  Dataset target = draw_domain(true);
  target.name = "two-moon-target";
  target.role = Role::target;
  return {std::move(source), std::move(target)};
}

Matrix PcaModel::transform(const Matrix& x) const {
  return components.transpose() * (x.colwise() - mean);
}

Matrix PcaModel::reconstruct(const Matrix& z) const {
  return (components * z).colwise() + mean;
}

PcaModel pca_fit(const Matrix& x, Index target_dim) {
  require_finite(x, kModule, "data");
  const Index d = x.rows();
  const Index n = x.cols();
  if (n < 1) {
    throw InvalidArgument(kModule, "pca needs at least one point");
  }
  if (target_dim < 1 || target_dim > std::min(d, n)) {
    throw DimensionMismatch(kModule, "target_dim must be in [1, min(d, n)]");
  }
  PcaModel model;
  model.mean = x.rowwise().mean();
  Matrix xc = x.colwise() - model.mean;

  Matrix components(d, target_dim);
  if (d <= n) {
    Matrix cov = symmetrized(xc * xc.transpose() / static_cast<double>(n));
    auto ep = linalg::sym_eigen(cov);
    for (Index c = 0; c < target_dim; ++c) {
      components.col(c) = ep.vectors.col(d - 1 - c);
    }
  } else {
    // Thin direction recovery through the n x n inner-product matrix.
    Matrix g = symmetrized(xc.transpose() * xc);
    auto ep = linalg::sym_eigen(g);
    for (Index c = 0; c < target_dim; ++c) {
      Vector dir = xc * ep.vectors.col(n - 1 - c);
      double norm = dir.norm();
      if (!(norm > 0.0)) {
        throw DegenerateData(kModule, "principal direction " + std::to_string(c) +
                                          " has zero variance; lower target_dim");
      }
      components.col(c) = dir / norm;
    }
  }
  for (Index c = 0; c < target_dim; ++c) {
    Index arg = 0;
    components.col(c).cwiseAbs().maxCoeff(&arg);
    if (components(arg, c) < 0.0) {
      components.col(c) = -components.col(c);
    }
  }
  model.components = std::move(components);
  return model;
}

Matrix pca_reduce(const Matrix& x, Index target_dim) {
  return pca_fit(x, target_dim).transform(x);
}

}  // namespace netadapt::data
