#include "sslcc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "sslcc/errors.hpp"

namespace sslcc {

std::string Method::variant_name() const {
  switch (kind) {
    case MethodKind::kSsl: return variant.name();
    case MethodKind::kNoSsl: return "NO-SSL";
    case MethodKind::kAttrOnly: return "ATTR-ONLY";
    case MethodKind::kRelatOnly: return "RELAT-ONLY";
  }
  return "?";
}

std::string Method::id() const {
  if (kind == MethodKind::kAttrOnly || kind == MethodKind::kRelatOnly) return variant_name();
  return variant_name() + "/" + std::string(to_string(classifier));
}

Method make_method(const std::string& variant, ClassifierKind classifier, int em_iterations) {
  Method m;
  m.classifier = classifier;
  if (variant == "ALL-EM") {
    m.variant = SslVariant::all_em(em_iterations);
  } else if (variant == "ALL-ONEPASS") {
    m.variant = SslVariant::all_onepass();
  } else if (variant == "KNOWN-EM") {
    m.variant = SslVariant::known_em(em_iterations);
  } else if (variant == "KNOWN-ONEPASS") {
    m.variant = SslVariant::known_onepass();
  } else if (variant == "NO-SSL") {
    m.kind = MethodKind::kNoSsl;
  } else if (variant == "ATTR-ONLY") {
    m.kind = MethodKind::kAttrOnly;
    m.classifier = ClassifierKind::kLR;
  } else if (variant == "RELAT-ONLY") {
    m.kind = MethodKind::kRelatOnly;
    m.classifier = ClassifierKind::kLR;
  } else {
    throw ConfigError("unknown variant '" + variant + "'");
  }
  return m;
}

void ExperimentConfig::validate() const {
  if (densities.empty()) throw ConfigError("densities must not be empty");
  for (double d : densities) {
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("densities must lie strictly between 0 and 1");
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (variants.empty()) throw ConfigError("variants must not be empty");
  if (classifiers.empty()) throw ConfigError("classifiers must not be empty");
  if (cv_folds < 2) throw ConfigError("cv_folds must be >= 2");
  if (sigma_grid.empty() || alpha_grid.empty()) throw ConfigError("grids must not be empty");
  for (double v : sigma_grid) {
    if (!(v > 0.0)) throw ConfigError("sigma_grid values must be positive");
  }
  for (double v : alpha_grid) {
    if (!(v > 0.0)) throw ConfigError("alpha_grid values must be positive");
  }
  if (ica_iterations < 1 || em_iterations < 1 || cv_em_iterations < 1) {
    throw ConfigError("iteration counts must be >= 1");
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (pca_components < 0) throw ConfigError("pca_components must be >= 0");
  for (const auto& v : variants) make_method(v, ClassifierKind::kLR, em_iterations);
  if (!reference.empty()) {
    const auto methods = expand_methods(*this);
    if (std::none_of(methods.begin(), methods.end(),
                     [&](const Method& m) { return m.id() == reference; })) {
      throw ConfigError("reference method '" + reference + "' is not among the configured methods");
    }
  }
}

std::vector<Method> expand_methods(const ExperimentConfig& config) {
  std::vector<Method> out;
  for (const auto& v : config.variants) {
    for (ClassifierKind c : config.classifiers) {
      Method m = make_method(v, c, config.em_iterations);
      if (std::none_of(out.begin(), out.end(), [&](const Method& x) { return x.id() == m.id(); })) {
        out.push_back(m);
      }
    }
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  std::uint64_t z = parent + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Uniform integer in [0, bound) by rejection; unlike
// std::uniform_int_distribution the sequence is fixed across standard
// libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

std::uint64_t hash_nodes(const KnownLabels& known) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& e : known.entries()) {
    h ^= static_cast<std::uint64_t>(e.node);
    h *= 1099511628211ULL;
  }
  return h;
}

double median_value(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  return grid[(grid.size() - 1) / 2];
}

}  // namespace

KnownLabels sample_known(const DataGraph& graph, double density, std::uint64_t seed) {
  if (!(density > 0.0 && density < 1.0)) throw ConfigError("density must lie in (0, 1)");
  if (!graph.has_truth()) throw UsageError("sampling known labels requires ground truth");
  const std::size_t n = graph.node_count();
  if (n < 2) throw UsageError("graph too small to split into known and unknown nodes");
  auto count = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
  if (count == 0) {
    std::clog << "warning: density " << density << " rounds to 0 known nodes; using 1\n";
    count = 1;
  }
  count = std::min(count, n - 1);

  std::mt19937_64 rng(seed);
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  // Partial Fisher-Yates: the first `count` slots are the sample.
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(order[i], order[i + uniform_below(rng, n - i)]);
  }
  std::vector<KnownLabel> entries;
  entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    entries.push_back({order[i], graph.true_labels()[order[i]]});
  }
  return KnownLabels(std::move(entries), n, graph.class_count());
}

double accuracy(const LabelState& predicted, std::span<const ClassId> truth,
                std::span<const NodeId> test_nodes) {
  if (test_nodes.empty()) throw UsageError("accuracy over an empty test set is undefined");
  std::size_t correct = 0;
  for (NodeId i : test_nodes) {
    if (predicted.label(i) == truth[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_nodes.size());
}

bool is_degenerate(const LabelState& predicted, std::span<const NodeId> test_nodes,
                   const Distribution& expected) {
  if (test_nodes.empty()) return false;
  std::vector<std::size_t> counts(static_cast<std::size_t>(expected.size()), 0);
  for (NodeId i : test_nodes) ++counts[static_cast<std::size_t>(predicted.label(i))];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const double share = static_cast<double>(counts[c]) / static_cast<double>(test_nodes.size());
    if (share > 0.9 && expected(static_cast<Eigen::Index>(c)) < 0.5) return true;
  }
  return false;
}

std::vector<std::vector<NodeId>> stratified_folds(const KnownLabels& known, int folds,
                                                  std::uint64_t seed) {
  if (folds < 1) throw ConfigError("fold count must be >= 1");
  std::mt19937_64 rng(seed);
  ClassId max_class = 0;
  for (const auto& e : known.entries()) max_class = std::max(max_class, e.label);
  std::vector<std::vector<NodeId>> by_class(static_cast<std::size_t>(max_class) + 1);
  for (const auto& e : known.entries()) by_class[static_cast<std::size_t>(e.label)].push_back(e.node);

  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(folds));
  std::size_t slot = 0;
  for (auto& members : by_class) {
    shuffle(members, rng);
    for (NodeId node : members) {
      out[slot % out.size()].push_back(node);
      ++slot;
    }
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

LabelState run_method(const DataGraph& graph, const KnownLabels& known, const Method& method,
                      const ClassifierSpec& spec, const IcaConfig& ica_config) {
  switch (method.kind) {
    case MethodKind::kSsl: return ssl_learn(graph, known, method.variant, spec, ica_config).labels;
    case MethodKind::kNoSsl: return no_ssl(graph, known, spec, ica_config).labels;
    case MethodKind::kAttrOnly: return attr_only(graph, known, spec).labels;
    case MethodKind::kRelatOnly: return wvrn_rl(graph, known).labels;
  }
  throw UsageError("unknown method kind");
}

namespace {

ClassifierSpec spec_for(const Method& method, double sigma_sq, double nb_alpha,
                        double prior_smoothing) {
  ClassifierSpec spec = ClassifierSpec::make(method.classifier, sigma_sq, nb_alpha);
  spec.prior_smoothing = prior_smoothing;
  return spec;
}

struct FoldSplit {
  KnownLabels train;
  std::vector<NodeId> held_out;
};

// Total held-out correct predictions for one hyperparameter setting, or -1
// when no fold was usable.
long score_setting(const DataGraph& graph, const std::vector<FoldSplit>& splits,
                   const Method& method, const ClassifierSpec& spec, const IcaConfig& ica) {
  long correct = -1;
  for (const auto& split : splits) {
    const LabelState labels = run_method(graph, split.train, method, spec, ica);
    if (correct < 0) correct = 0;
    for (NodeId i : split.held_out) {
      if (labels.label(i) == graph.true_labels()[i]) ++correct;
    }
  }
  return correct;
}

}  // namespace

Hyperparams cross_validate_hyperparams(const DataGraph& graph, const KnownLabels& known,
                                       const Method& method, const SearchGrids& grids,
                                       const CvOptions& options, std::uint64_t seed) {
  if (grids.sigma.empty() || grids.alpha.empty()) throw ConfigError("search grids are empty");
  std::vector<double> sigma_grid = grids.sigma;
  std::vector<double> alpha_grid = grids.alpha;
  std::sort(sigma_grid.begin(), sigma_grid.end());
  std::sort(alpha_grid.begin(), alpha_grid.end());

  Hyperparams best{median_value(sigma_grid), median_value(alpha_grid), false};
  const bool tune_sigma = method.kind != MethodKind::kRelatOnly && sigma_grid.size() > 1;
  const bool tune_alpha = method.kind != MethodKind::kRelatOnly &&
                          method.kind != MethodKind::kAttrOnly && uses_nb(method.classifier) &&
                          alpha_grid.size() > 1;
  if (sigma_grid.size() == 1) best.sigma_sq = sigma_grid.front();
  if (alpha_grid.size() == 1) best.nb_alpha = alpha_grid.front();
  if (!tune_sigma && !tune_alpha) return best;

  std::vector<FoldSplit> splits;
  for (const auto& fold : stratified_folds(known, options.folds, seed)) {
    if (fold.empty()) continue;
    std::vector<KnownLabel> train;
    for (const auto& e : known.entries()) {
      if (!std::binary_search(fold.begin(), fold.end(), e.node)) train.push_back(e);
    }
    if (train.empty()) continue;
    splits.push_back({KnownLabels(std::move(train), graph.node_count(), graph.class_count()), fold});
  }
  if (splits.empty()) {
    std::clog << "warning: no usable CV folds; using grid midpoints\n";
    best.fallback = true;
    return best;
  }

  Method cv_method = method;
  cv_method.variant.n_iterations = std::min(method.variant.n_iterations, options.em_iterations_cap);

  if (tune_sigma) {
    long best_score = -1;
    for (double sigma : sigma_grid) {
      const long s = score_setting(graph, splits, cv_method,
                                   spec_for(method, sigma, best.nb_alpha, options.prior_smoothing),
                                   options.ica);
      if (s > best_score) {
        best_score = s;
        best.sigma_sq = sigma;
      }
    }
  }
  if (tune_alpha) {
    long best_score = -1;
    for (double alpha : alpha_grid) {
      const long s = score_setting(graph, splits, cv_method,
                                   spec_for(method, best.sigma_sq, alpha, options.prior_smoothing),
                                   options.ica);
      if (s > best_score) {
        best_score = s;
        best.nb_alpha = alpha;
      }
    }
  }
  return best;
}

std::vector<double> ExperimentReport::accuracies(const std::string& method, double density) const {
  std::vector<double> out;
  for (const auto& r : results) {
    if (r.method == method && r.density == density && r.ok()) out.push_back(r.accuracy);
  }
  return out;
}

std::size_t ExperimentReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const TrialResult& r) { return !r.ok(); }));
}

namespace {

std::vector<TrialResult> run_cell(const ExperimentConfig& config, const DataGraph& graph,
                                  const std::vector<Method>& methods, std::size_t density_index,
                                  int trial) {
  const double density = config.densities[density_index];
  const std::uint64_t cell_seed =
      derive_seed(derive_seed(config.master_seed, density_index), static_cast<std::uint64_t>(trial));
  const KnownLabels known = sample_known(graph, density, derive_seed(cell_seed, 0));
  const std::uint64_t cv_seed = derive_seed(cell_seed, 1);
  const std::vector<NodeId> test_nodes = known.unknown_nodes();
  const Distribution expected = class_prior(LabelState(graph.node_count(), known),
                                            graph.class_count(), true, config.prior_smoothing);

  const SearchGrids grids{config.sigma_grid, config.alpha_grid};
  CvOptions cv;
  cv.folds = config.cv_folds;
  cv.em_iterations_cap = config.cv_em_iterations;
  cv.ica.iterations = config.ica_iterations;
  cv.prior_smoothing = config.prior_smoothing;
  IcaConfig ica;
  ica.iterations = config.ica_iterations;

  std::vector<TrialResult> out;
  for (const Method& method : methods) {
    TrialResult r;
    r.method = method.id();
    r.density = density;
    r.trial = trial;
    r.test_size = test_nodes.size();
    r.known_hash = hash_nodes(known);
    const auto start = std::chrono::steady_clock::now();
    try {
      const Hyperparams hp = cross_validate_hyperparams(graph, known, method, grids, cv, cv_seed);
      r.sigma_sq = hp.sigma_sq;
      r.nb_alpha = hp.nb_alpha;
      r.cv_fallback = hp.fallback;
      const LabelState labels = run_method(
          graph, known, method, spec_for(method, hp.sigma_sq, hp.nb_alpha, config.prior_smoothing),
          ica);
      r.accuracy = accuracy(labels, graph.true_labels(), test_nodes);
      for (NodeId i : test_nodes) {
        if (labels.label(i) == graph.true_labels()[i]) ++r.correct;
      }
      r.degenerate = is_degenerate(labels, test_nodes, expected);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const DataGraph& graph) {
  config.validate();
  if (!graph.has_truth()) throw DataError("experiment graph has no ground-truth labels");

  ExperimentReport report;
  report.methods = expand_methods(config);
  report.densities = config.densities;
  report.trials = config.trials;
  report.significance_level = config.significance_level;
  report.reference = config.reference.empty() ? report.methods.front().id() : config.reference;

  const std::size_t cells = config.densities.size() * static_cast<std::size_t>(config.trials);
  std::vector<std::vector<TrialResult>> per_cell(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t d = cell / static_cast<std::size_t>(config.trials);
      const int t = static_cast<int>(cell % static_cast<std::size_t>(config.trials));
      per_cell[cell] = run_cell(config, graph, report.methods, d, t);
    }
  };
  const auto thread_count = std::min<std::size_t>(static_cast<std::size_t>(config.threads), cells);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  }

  // Reorder to (density, method, trial).
  for (std::size_t d = 0; d < config.densities.size(); ++d) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      for (int t = 0; t < config.trials; ++t) {
        report.results.push_back(per_cell[d * static_cast<std::size_t>(config.trials) +
                                          static_cast<std::size_t>(t)][m]);
      }
    }
  }
  return report;
}

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace

void write_trials_csv(std::ostream& out, const ExperimentReport& report) {
  out << "density,method,trial,accuracy,correct,test_size,degenerate,sigma_sq,nb_alpha,"
         "cv_fallback,known_hash,error\n";
  for (const auto& r : report.results) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.known_hash));
    out << fixed4(r.density) << ',' << r.method << ',' << r.trial << ','
        << (r.ok() ? fixed4(r.accuracy) : std::string("NA")) << ',' << r.correct << ','
        << r.test_size << ',' << (r.degenerate ? 1 : 0) << ',' << general(r.sigma_sq) << ','
        << general(r.nb_alpha) << ',' << (r.cv_fallback ? 1 : 0) << ',' << hash << ','
        << csv_escape(r.error) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentReport& report,
                       const SignificanceTest& test) {
  const bool can_test = report.trials >= 2;
  out << "# mean accuracy over " << report.trials << " trial(s); reference " << report.reference
      << '\n';
  if (can_test) {
    out << "# marks: '*' significantly worse, '+' significantly better than the reference"
           " (paired t-test, level "
        << general(report.significance_level)
        << "; uncorrected, so anti-conservative when test sets overlap across trials)\n";
  } else {
    out << "# insufficient trials: significance tests skipped\n";
  }
  out << "method";
  for (double d : report.densities) out << ',' << fixed4(d);
  out << '\n';

  for (const auto& method : report.methods) {
    const std::string id = method.id();
    out << id;
    for (double d : report.densities) {
      const auto acc = report.accuracies(id, d);
      out << ',';
      if (acc.empty()) {
        out << "NA";
        continue;
      }
      out << fixed4(mean(acc));
      if (!can_test || id == report.reference) continue;
      // Pair by trial index; keep trials where both runs succeeded.
      std::vector<double> a, b;
      for (const auto& r : report.results) {
        if (r.method != id || r.density != d || !r.ok()) continue;
        for (const auto& s : report.results) {
          if (s.method == report.reference && s.density == d && s.trial == r.trial && s.ok()) {
            a.push_back(r.accuracy);
            b.push_back(s.accuracy);
          }
        }
      }
      if (a.size() < 2) continue;
      const TTestResult t = test(a, b, report.significance_level);
      if (t.significant) out << (mean(a) < mean(b) ? "*" : "+");
    }
    out << '\n';
  }
}

void write_timings_csv(std::ostream& out, const ExperimentReport& report) {
  out << "density,method,trial,wall_seconds\n";
  for (const auto& r : report.results) {
    out << fixed4(r.density) << ',' << r.method << ',' << r.trial << ',' << r.wall_seconds << '\n';
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  PreprocessOptions prep;
  prep.pca_components = config.pca_components;
  prep.normalization = config.normalization;
  const DataGraph graph = build_graph(load_dataset(config.nodes, config.edges), prep);
  ExperimentReport report = run_experiment(config, graph);

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + config.output_dir.string());
  std::ofstream trials(config.output_dir / "trials.csv");
  std::ofstream summary(config.output_dir / "summary.csv");
  std::ofstream timings(config.output_dir / "timings.csv");
  if (!trials || !summary || !timings) {
    throw ConfigError("cannot write reports into " + config.output_dir.string());
  }
  write_trials_csv(trials, report);
  write_summary_csv(summary, report);
  write_timings_csv(timings, report);
  return report;
}

}  // namespace sslcc
