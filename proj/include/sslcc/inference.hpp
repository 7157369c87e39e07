#pragma once

#include <functional>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"
#include "sslcc/logistic.hpp"
#include "sslcc/node_classifier.hpp"

namespace sslcc {

struct IcaConfig {
  int iterations = 10;
};

/// Called after the bootstrap (iteration 0) and after every ICA round.
using IcaObserver = std::function<void(int iteration, const LabelState& state)>;

/// Known labels plus the attribute-only argmax of `bootstrap` on every
/// unknown node.
LabelState bootstrap_labels(const DataGraph& graph, const KnownLabels& known,
                            const LRModel& bootstrap);

/// Iterative classification with hard labels. Each round recomputes
/// relational features from the previous round's full labeling, then
/// re-predicts every unknown node in ascending index order. Runs exactly
/// config.iterations rounds.
LabelState ica(const DataGraph& graph, const KnownLabels& known, const LRModel& bootstrap,
               const NodeClassifier& node_model, const IcaConfig& config = {},
               const IcaObserver& observer = {});

struct WvrnConfig {
  enum class Init { kClassPrior, kUniform };
  int max_iterations = 100;
  double convergence_tol = 1e-4;
  Init init = Init::kClassPrior;
  /// Weight on the new neighbor average at sweep t is anneal_decay^t; 1
  /// gives plain relaxation labeling.
  double anneal_decay = 1.0;
};

struct WvrnResult {
  LabelState labels;
  Eigen::MatrixXd distributions;  // N x |C|
  int sweeps = 0;
  bool converged = false;
};

/// Weighted-vote relational neighbor with relaxation labeling. Known nodes
/// are clamped to point masses; every sweep replaces each unknown node's
/// distribution by the mean of its neighbors' previous-sweep distributions.
WvrnResult wvrn_rl(const DataGraph& graph, const KnownLabels& known, const WvrnConfig& config = {});

}  // namespace sslcc
