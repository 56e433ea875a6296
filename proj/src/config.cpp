#include "netadapt/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace netadapt::cli {

namespace {

constexpr const char* kModule = "cli";

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

using Section = std::map<std::string, std::string>;
using Sections = std::map<std::string, Section>;

Sections read_sections(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(kModule, "cannot open config '" + path + "'");
  }
  Sections sections;
  std::string line;
  std::string current;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(kModule, "line " + std::to_string(line_no) + ": unterminated section");
      }
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty()) {
        throw ConfigError(kModule, "line " + std::to_string(line_no) + ": empty section name");
      }
      sections[current];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || current.empty()) {
      throw ConfigError(kModule, "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(kModule, "line " + std::to_string(line_no) + ": empty key");
    }
    if (!sections[current].emplace(key, value).second) {
      throw ConfigError(kModule, "line " + std::to_string(line_no) + ": duplicate key '" + key +
                                     "' in [" + current + "]");
    }
  }
  return sections;
}

double parse_number(const std::string& value, const std::string& where) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw ConfigError(kModule, where + ": cannot parse '" + value + "' as a number");
  }
  return out;
}

long long parse_integer(const std::string& value, const std::string& where) {
  double v = parse_number(value, where);
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9) {
    throw ConfigError(kModule, where + ": '" + value + "' is not an integer");
  }
  return static_cast<long long>(r);
}

bool parse_bool(const std::string& value, const std::string& where) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError(kModule, where + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    items.push_back(trim(item));
  }
  return items;
}

std::vector<double> parse_number_list(const std::string& value, const std::string& where) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) {
    out.push_back(parse_number(item, where));
  }
  if (out.empty()) {
    throw ConfigError(kModule, where + ": list must not be empty");
  }
  return out;
}

void check_keys(const Section& section, const std::string& name,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section) {
    if (!allowed.count(key)) {
      throw ConfigError(kModule, "unknown key '" + key + "' in [" + name + "]");
    }
  }
}

const Section* find(const Sections& sections, const std::string& name) {
  auto it = sections.find(name);
  return it == sections.end() ? nullptr : &it->second;
}

std::optional<std::string> get(const Section& section, const std::string& key) {
  auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  return it->second;
}

const std::set<std::string> kAlgorithms = {"net", "jda", "tca", "kpca"};

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  Sections sections = read_sections(path);
  for (const auto& [name, body] : sections) {
    static const std::set<std::string> known = {"experiment", "data", "kernel",
                                               "params",     "grid", "kmm"};
    if (!known.count(name)) {
      throw ConfigError(kModule, "unknown section [" + name + "]");
    }
  }

  ExperimentConfig cfg;

  if (const Section* s = find(sections, "experiment")) {
    check_keys(*s, "experiment",
               {"algorithm", "algorithms", "seed", "seeds", "output"});
    if (get(*s, "algorithm") && get(*s, "algorithms")) {
      throw ConfigError(kModule, "[experiment] takes algorithm or algorithms, not both");
    }
    if (auto v = get(*s, "algorithm")) {
      cfg.algorithms = {*v};
    } else if (auto vs = get(*s, "algorithms")) {
      cfg.algorithms = split_list(*vs);
    }
    for (const auto& a : cfg.algorithms) {
      if (!kAlgorithms.count(a)) {
        throw ConfigError(kModule, "unknown algorithm '" + a + "'");
      }
    }
    if (get(*s, "seed") && get(*s, "seeds")) {
      throw ConfigError(kModule, "[experiment] takes seed or seeds, not both");
    }
    if (auto v = get(*s, "seed")) {
      long long seed = parse_integer(*v, "[experiment] seed");
      if (seed < 0) throw ConfigError(kModule, "[experiment] seed must be nonnegative");
      cfg.seeds = {static_cast<std::uint64_t>(seed)};
    } else if (auto vs = get(*s, "seeds")) {
      for (const auto& item : split_list(*vs)) {
        long long seed = parse_integer(item, "[experiment] seeds");
        if (seed < 0) throw ConfigError(kModule, "[experiment] seeds must be nonnegative");
        cfg.seeds.push_back(static_cast<std::uint64_t>(seed));
      }
      if (cfg.seeds.empty()) {
        throw ConfigError(kModule, "[experiment] seeds must not be empty");
      }
    }
    if (auto v = get(*s, "output")) cfg.output = *v;
  }
  if (cfg.seeds.empty()) cfg.seeds = {0};

  if (const Section* s = find(sections, "data")) {
    check_keys(*s, "data",
               {"generator", "n_per_class", "noise_sd", "rotation_deg", "translate", "source",
                "source_labels", "target", "target_labels"});
    const bool has_generator = get(*s, "generator").has_value();
    const bool has_files = get(*s, "source").has_value();
    if (has_generator == has_files) {
      throw ConfigError(kModule, "[data] needs exactly one of generator or source");
    }
    if (has_generator) {
      if (*get(*s, "generator") != "two-moon") {
        throw ConfigError(kModule, "unknown generator '" + *get(*s, "generator") + "'");
      }
      GeneratorConfig g;
      if (auto v = get(*s, "n_per_class")) {
        long long n = parse_integer(*v, "[data] n_per_class");
        if (n < 1) throw ConfigError(kModule, "[data] n_per_class must be positive");
        g.n_per_class = static_cast<Index>(n);
      }
      if (auto v = get(*s, "noise_sd")) {
        g.noise_sd = parse_number(*v, "[data] noise_sd");
        if (g.noise_sd < 0) throw ConfigError(kModule, "[data] noise_sd must be nonnegative");
      }
      if (auto v = get(*s, "rotation_deg")) {
        g.rotation_deg = parse_number(*v, "[data] rotation_deg");
      }
      if (auto v = get(*s, "translate")) {
        auto nums = parse_number_list(*v, "[data] translate");
        if (nums.size() != 2) {
          throw ConfigError(kModule, "[data] translate needs exactly two values");
        }
        g.translate_x = nums[0];
        g.translate_y = nums[1];
      }
      cfg.generator = g;
    } else {
      FileConfig f;
      f.source_path = *get(*s, "source");
      if (auto v = get(*s, "source_labels")) {
        f.source_has_labels = parse_bool(*v, "[data] source_labels");
      }
      if (auto v = get(*s, "target")) f.target_path = *v;
      if (auto v = get(*s, "target_labels")) {
        f.target_has_labels = parse_bool(*v, "[data] target_labels");
      }
      if (!std::filesystem::exists(f.source_path)) {
        throw ConfigError(kModule, "source file '" + f.source_path + "' does not exist");
      }
      if (f.target_path && !std::filesystem::exists(*f.target_path)) {
        throw ConfigError(kModule, "target file '" + *f.target_path + "' does not exist");
      }
      cfg.files = std::move(f);
    }
  } else {
    throw ConfigError(kModule, "missing [data] section");
  }

  if (const Section* s = find(sections, "kernel")) {
    check_keys(*s, "kernel", {"kind", "bandwidth"});
    if (auto v = get(*s, "kind")) {
      if (*v == "gaussian") {
        cfg.kspec.kind = kernel::Kind::gaussian;
      } else if (*v == "linear") {
        cfg.kspec.kind = kernel::Kind::linear;
      } else {
        throw ConfigError(kModule, "unknown kernel kind '" + *v + "'");
      }
    }
    if (auto v = get(*s, "bandwidth")) {
      if (*v != "median") {
        double bw = parse_number(*v, "[kernel] bandwidth");
        if (!(bw > 0)) throw ConfigError(kModule, "[kernel] bandwidth must be positive");
        cfg.kspec.bandwidth = bw;
      }
    }
  }

  const Section* params = find(sections, "params");
  const Section* grid = find(sections, "grid");
  if (params && grid) {
    throw ConfigError(kModule, "config declares both [params] and [grid]; choose one");
  }
  if (params) {
    check_keys(*params, "params", {"alpha", "beta", "gamma", "k", "iterations", "ridge"});
    solver::HyperParams hp;
    if (auto v = get(*params, "alpha")) hp.alpha = parse_number(*v, "[params] alpha");
    if (auto v = get(*params, "beta")) hp.beta = parse_number(*v, "[params] beta");
    if (auto v = get(*params, "gamma")) hp.gamma = parse_number(*v, "[params] gamma");
    if (auto v = get(*params, "k")) {
      long long k = parse_integer(*v, "[params] k");
      if (k < 1) throw ConfigError(kModule, "[params] k must be positive");
      hp.k = static_cast<Index>(k);
    }
    if (auto v = get(*params, "iterations")) {
      long long it = parse_integer(*v, "[params] iterations");
      if (it < 1) throw ConfigError(kModule, "[params] iterations must be positive");
      hp.iterations = static_cast<int>(it);
    }
    if (auto v = get(*params, "ridge")) {
      if (*v != "auto") {
        double r = parse_number(*v, "[params] ridge");
        if (r < 0) throw ConfigError(kModule, "[params] ridge must be nonnegative");
        hp.ridge = r;
      }
    }
    if (hp.alpha < 0 || hp.beta < 0 || hp.gamma < 0) {
      throw ConfigError(kModule, "[params] alpha, beta and gamma must be nonnegative");
    }
    cfg.params = hp;
  }
  if (grid) {
    check_keys(*grid, "grid", {"k", "alpha", "beta", "gamma"});
    modelsel::ParamGrid g;
    if (auto v = get(*grid, "k")) {
      for (double kv : parse_number_list(*v, "[grid] k")) {
        if (kv < 1 || kv != std::floor(kv)) {
          throw ConfigError(kModule, "[grid] k values must be positive integers");
        }
        g.k_values.push_back(static_cast<Index>(kv));
      }
    }
    if (auto v = get(*grid, "alpha")) g.alphas = parse_number_list(*v, "[grid] alpha");
    if (auto v = get(*grid, "beta")) g.betas = parse_number_list(*v, "[grid] beta");
    if (auto v = get(*grid, "gamma")) g.gammas = parse_number_list(*v, "[grid] gamma");
    if (g.k_values.empty() || g.gammas.empty()) {
      throw ConfigError(kModule, "[grid] needs at least k and gamma axes");
    }
    cfg.grid = std::move(g);
  }

  if (const Section* s = find(sections, "kmm")) {
    check_keys(*s, "kmm", {"b_cap", "epsilon", "max_iters", "step_tol"});
    if (auto v = get(*s, "b_cap")) {
      cfg.kmm.b_cap = parse_number(*v, "[kmm] b_cap");
      if (!(cfg.kmm.b_cap > 0)) throw ConfigError(kModule, "[kmm] b_cap must be positive");
    }
    if (auto v = get(*s, "epsilon")) {
      if (*v != "auto") {
        double eps = parse_number(*v, "[kmm] epsilon");
        if (eps < 0) throw ConfigError(kModule, "[kmm] epsilon must be nonnegative");
        cfg.kmm.epsilon = eps;
      }
    }
    if (auto v = get(*s, "max_iters")) {
      long long it = parse_integer(*v, "[kmm] max_iters");
      if (it < 1) throw ConfigError(kModule, "[kmm] max_iters must be positive");
      cfg.kmm.max_iters = static_cast<int>(it);
    }
    if (auto v = get(*s, "step_tol")) {
      cfg.kmm.step_tol = parse_number(*v, "[kmm] step_tol");
      if (!(cfg.kmm.step_tol > 0)) throw ConfigError(kModule, "[kmm] step_tol must be positive");
    }
  }

  return cfg;
}

solver::HyperParams profile_params(const std::string& name) {
  solver::HyperParams hp;
  hp.iterations = 10;
  if (name == "digit") {
    hp.alpha = 1.0;
    hp.beta = 0.01;
    hp.gamma = 1.0;
    hp.k = 20;
  } else if (name == "face") {
    hp.alpha = 0.01;
    hp.beta = 0.01;
    hp.gamma = 1.0;
    hp.k = 20;
  } else if (name == "coil") {
    hp.alpha = 1.0;
    hp.beta = 1.0;
    hp.gamma = 1.0;
    hp.k = 60;
  } else if (name == "pie") {
    hp.alpha = 10.0;
    hp.beta = 0.001;
    hp.gamma = 0.005;
    hp.k = 200;
  } else if (name == "office-surf" || name == "office-deep") {
    hp.alpha = 1.0;
    hp.beta = 1.0;
    hp.gamma = 1.0;
    hp.k = 20;
  } else {
    throw ConfigError(kModule, "unknown profile '" + name + "'");
  }
  return hp;
}

std::vector<std::string> profile_names() {
  return {"coil", "digit", "face", "office-deep", "office-surf", "pie"};
}

}  // namespace netadapt::cli
