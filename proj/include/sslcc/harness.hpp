#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sslcc/data_io.hpp"
#include "sslcc/graph.hpp"
#include "sslcc/inference.hpp"
#include "sslcc/node_classifier.hpp"
#include "sslcc/ssl.hpp"
#include "sslcc/stats.hpp"

namespace sslcc {

enum class MethodKind { kSsl, kNoSsl, kAttrOnly, kRelatOnly };

/// One row of the results table: a learning algorithm plus, where it has
/// one, its node classifier.
struct Method {
  MethodKind kind = MethodKind::kSsl;
  SslVariant variant;
  ClassifierKind classifier = ClassifierKind::kLR;

  /// "ALL-EM/LR+NB+Reg", "NO-SSL/LR", "ATTR-ONLY", "RELAT-ONLY".
  std::string id() const;
  std::string variant_name() const;
};

/// Variant names: ALL-EM, ALL-ONEPASS, KNOWN-EM, KNOWN-ONEPASS, NO-SSL,
/// ATTR-ONLY, RELAT-ONLY. EM variants use em_iterations rounds.
Method make_method(const std::string& variant, ClassifierKind classifier, int em_iterations = 10);

struct ExperimentConfig {
  std::filesystem::path nodes;
  std::filesystem::path edges;
  std::filesystem::path output_dir = ".";
  std::vector<double> densities;
  int trials = 15;
  std::vector<std::string> variants;
  std::vector<ClassifierKind> classifiers;
  std::uint64_t master_seed = 1;
  int cv_folds = 5;
  std::vector<double> sigma_grid{0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<double> alpha_grid{0.1, 1.0, 10.0};
  int pca_components = 0;
  Normalization normalization = Normalization::kZScore;
  int ica_iterations = 10;
  int em_iterations = 10;
  /// Cap on learning-loop rounds while cross-validating.
  int cv_em_iterations = 1;
  int threads = 1;
  double significance_level = 0.05;
  double prior_smoothing = 1.0;
  /// Method id that significance marks compare against; first method if empty.
  std::string reference;

  void validate() const;
};

/// Methods in report order. ATTR-ONLY and RELAT-ONLY appear once no matter
/// how many classifiers are configured.
std::vector<Method> expand_methods(const ExperimentConfig& config);

/// SplitMix64 mix of a parent seed with a stream index.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// round(density * N) nodes drawn uniformly without replacement, clamped to
/// [1, N - 1]. Labels come from the graph's ground truth.
KnownLabels sample_known(const DataGraph& graph, double density, std::uint64_t seed);

/// Fraction of `test_nodes` whose predicted label equals the truth.
double accuracy(const LabelState& predicted, std::span<const ClassId> truth,
                std::span<const NodeId> test_nodes);

struct SearchGrids {
  std::vector<double> sigma{0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<double> alpha{0.1, 1.0, 10.0};
};

struct CvOptions {
  int folds = 5;
  int em_iterations_cap = 1;
  IcaConfig ica;
  double prior_smoothing = 1.0;
};

struct Hyperparams {
  double sigma_sq = 1.0;
  double nb_alpha = 1.0;
  /// True when no fold was usable and grid midpoints were returned.
  bool fallback = false;
};

/// Class-stratified folds over the known nodes where class counts allow;
/// each class is shuffled and dealt round-robin, continuing where the
/// previous class stopped.
std::vector<std::vector<NodeId>> stratified_folds(const KnownLabels& known, int folds,
                                                  std::uint64_t seed);

/// Grid search on held-out known labels. sigma_sq is chosen first (with the
/// middle alpha), then alpha with sigma_sq fixed. Ties go to the smaller
/// value; singleton grids return immediately.
Hyperparams cross_validate_hyperparams(const DataGraph& graph, const KnownLabels& known,
                                       const Method& method, const SearchGrids& grids,
                                       const CvOptions& options, std::uint64_t seed);

/// Runs one method with fixed hyperparameters and returns the labeling.
LabelState run_method(const DataGraph& graph, const KnownLabels& known, const Method& method,
                      const ClassifierSpec& spec, const IcaConfig& ica_config);

/// One class takes > 90% of the V^U predictions while p~ gives it < 50%.
bool is_degenerate(const LabelState& predicted, std::span<const NodeId> test_nodes,
                   const Distribution& expected);

struct TrialResult {
  std::string method;
  double density = 0.0;
  int trial = 0;
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t test_size = 0;
  bool degenerate = false;
  double sigma_sq = 0.0;
  double nb_alpha = 0.0;
  bool cv_fallback = false;
  double wall_seconds = 0.0;
  std::uint64_t known_hash = 0;
  std::string error;

  bool ok() const { return error.empty(); }
};

struct ExperimentReport {
  std::vector<Method> methods;
  std::vector<double> densities;
  int trials = 0;
  double significance_level = 0.05;
  std::string reference;
  std::vector<TrialResult> results;  // ordered by (density, method, trial)

  std::vector<double> accuracies(const std::string& method, double density) const;
  std::size_t failures() const;
};

ExperimentReport run_experiment(const ExperimentConfig& config, const DataGraph& graph);

/// Loads the dataset named in the config, runs, and writes trials.csv,
/// summary.csv and timings.csv into config.output_dir.
ExperimentReport run_experiment(const ExperimentConfig& config);

void write_trials_csv(std::ostream& out, const ExperimentReport& report);
void write_summary_csv(std::ostream& out, const ExperimentReport& report,
                       const SignificanceTest& test = paired_t_test);
void write_timings_csv(std::ostream& out, const ExperimentReport& report);

/// key = value config text; lists are comma separated. Relative paths are
/// resolved against base_dir. Throws ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace sslcc
