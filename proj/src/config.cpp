#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <string>

#include "sslcc/errors.hpp"
#include "sslcc/harness.hpp"

namespace sslcc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const std::string item =
        trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("'" + key + "': expected a number, got '" + s + "'");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& s) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("'" + key + "': expected an integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(to_double(key, item));
  return out;
}

Normalization to_normalization(const std::string& s) {
  if (s == "zscore") return Normalization::kZScore;
  if (s == "minmax") return Normalization::kMinMax;
  if (s == "none") return Normalization::kNone;
  throw ConfigError("normalization must be zscore, minmax or none");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");

    if (key == "nodes") {
      config.nodes = resolve(value);
    } else if (key == "edges") {
      config.edges = resolve(value);
    } else if (key == "output_dir") {
      config.output_dir = resolve(value);
    } else if (key == "densities") {
      config.densities = to_doubles(key, value);
    } else if (key == "trials") {
      config.trials = to_int<int>(key, value);
    } else if (key == "variants") {
      config.variants = split_list(value);
    } else if (key == "classifiers") {
      config.classifiers.clear();
      for (const auto& c : split_list(value)) config.classifiers.push_back(parse_classifier_kind(c));
    } else if (key == "master_seed") {
      config.master_seed = to_int<std::uint64_t>(key, value);
    } else if (key == "cv_folds") {
      config.cv_folds = to_int<int>(key, value);
    } else if (key == "sigma_grid") {
      config.sigma_grid = to_doubles(key, value);
    } else if (key == "alpha_grid") {
      config.alpha_grid = to_doubles(key, value);
    } else if (key == "pca_components") {
      config.pca_components = to_int<int>(key, value);
    } else if (key == "normalization") {
      config.normalization = to_normalization(value);
    } else if (key == "ica_iterations") {
      config.ica_iterations = to_int<int>(key, value);
    } else if (key == "em_iterations") {
      config.em_iterations = to_int<int>(key, value);
    } else if (key == "cv_em_iterations") {
      config.cv_em_iterations = to_int<int>(key, value);
    } else if (key == "threads") {
      config.threads = to_int<int>(key, value);
    } else if (key == "significance_level") {
      config.significance_level = to_double(key, value);
    } else if (key == "prior_smoothing") {
      config.prior_smoothing = to_double(key, value);
    } else if (key == "reference") {
      config.reference = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (config.nodes.empty() || config.edges.empty()) {
    throw ConfigError("config must name both 'nodes' and 'edges'");
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace sslcc
