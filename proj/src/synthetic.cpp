#include "sslcc/synthetic.hpp"

#include <random>
#include <set>
#include <string>

#include "sslcc/errors.hpp"

namespace sslcc {

RawDataset generate_synthetic(const SyntheticOptions& options) {
  if (options.classes < 2) throw ConfigError("synthetic graph needs at least two classes");
  if (options.nodes < 2 * options.classes) throw ConfigError("too few nodes for the class count");
  if (options.homophily < 0.0 || options.homophily > 1.0) {
    throw ConfigError("homophily must lie in [0, 1]");
  }
  if (options.attr_noise < 0.0) throw ConfigError("attr_noise must be non-negative");
  if (options.links_per_node < 1) throw ConfigError("links_per_node must be >= 1");
  if (!options.class_weights.empty() && options.class_weights.size() != options.classes) {
    throw ConfigError("class_weights must have one entry per class");
  }

  std::mt19937_64 rng(options.seed);
  std::vector<double> weights = options.class_weights;
  if (weights.empty()) weights.assign(options.classes, 1.0);
  std::discrete_distribution<std::size_t> pick_class(weights.begin(), weights.end());

  // Every class gets at least one member so same-class links always exist.
  std::vector<std::size_t> label(options.nodes);
  for (std::size_t i = 0; i < options.nodes; ++i) {
    label[i] = i < options.classes ? i : pick_class(rng);
  }
  std::vector<std::vector<std::size_t>> members(options.classes);
  for (std::size_t i = 0; i < options.nodes; ++i) members[label[i]].push_back(i);

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> centers(options.classes,
                                           std::vector<double>(options.attr_dims));
  for (auto& center : centers) {
    for (double& v : center) v = normal(rng);
  }

  RawDataset out;
  out.columns.resize(options.attr_dims);
  for (std::size_t i = 0; i < options.nodes; ++i) {
    out.ids.push_back("n" + std::to_string(i));
    out.labels.push_back("c" + std::to_string(label[i]));
    for (std::size_t k = 0; k < options.attr_dims; ++k) {
      out.columns[k].real.push_back(centers[label[i]][k] + options.attr_noise * normal(rng));
    }
  }

  std::bernoulli_distribution same_class(options.homophily);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < options.nodes; ++i) {
    for (std::size_t e = 0; e < options.links_per_node; ++e) {
      std::size_t target = i;
      const bool want_same = same_class(rng);
      for (int attempt = 0; attempt < 64 && target == i; ++attempt) {
        std::size_t cls = label[i];
        if (!want_same) {
          std::uniform_int_distribution<std::size_t> other(0, options.classes - 2);
          cls = other(rng);
          if (cls >= label[i]) ++cls;
        }
        const auto& pool = members[cls];
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        target = pool[pick(rng)];
      }
      if (target == i) continue;
      edges.emplace(std::min(i, target), std::max(i, target));
    }
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

}  // namespace sslcc
