#include "sslcc/inference.hpp"

#include <algorithm>
#include <cmath>

#include "sslcc/errors.hpp"

namespace sslcc {

LabelState bootstrap_labels(const DataGraph& graph, const KnownLabels& known,
                            const LRModel& bootstrap) {
  if (bootstrap.feature_dim() != graph.attribute_dim()) {
    throw UsageError("bootstrap model dimension does not match graph attributes");
  }
  LabelState state(graph.node_count(), known);
  const std::vector<NodeId> unknown = known.unknown_nodes();
  if (unknown.empty()) return state;
  const Eigen::MatrixXd posteriors =
      lr_predict_proba_rows(bootstrap, select_rows(graph.attributes(), unknown));
  for (std::size_t r = 0; r < unknown.size(); ++r) {
    state.set_predicted(unknown[r], argmax(posteriors.row(static_cast<Eigen::Index>(r)).transpose()));
  }
  return state;
}

LabelState ica(const DataGraph& graph, const KnownLabels& known, const LRModel& bootstrap,
               const NodeClassifier& node_model, const IcaConfig& config,
               const IcaObserver& observer) {
  if (config.iterations < 1) throw ConfigError("ICA needs at least one iteration");
  if (node_model.class_count() != graph.class_count()) {
    throw UsageError("node classifier class count does not match graph");
  }
  LabelState state = bootstrap_labels(graph, known, bootstrap);
  if (observer) observer(0, state);
  const std::vector<NodeId> unknown = known.unknown_nodes();
  const Eigen::MatrixXd& attributes = graph.attributes();

  for (int round = 1; round <= config.iterations; ++round) {
    const ProportionFeatures proportion = compute_proportion_features(graph, state);
    const MultisetFeatures multiset = compute_multiset_features(graph, state);
    LabelState next = state;
    for (NodeId i : unknown) {
      const auto r = static_cast<Eigen::Index>(i);
      const Distribution p = node_model.predict_proba(
          attributes.row(r).transpose(), proportion.row(r).transpose(), multiset.row(r).transpose());
      next.set_predicted(i, argmax(p));
    }
    state = std::move(next);
    if (observer) observer(round, state);
  }
  return state;
}

WvrnResult wvrn_rl(const DataGraph& graph, const KnownLabels& known, const WvrnConfig& config) {
  if (known.empty()) throw ConfigError("wvRN needs at least one known label");
  if (!(config.convergence_tol > 0.0)) throw ConfigError("wvRN convergence_tol must be positive");
  if (config.max_iterations < 1) throw ConfigError("wvRN max_iterations must be >= 1");

  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const auto c = static_cast<Eigen::Index>(graph.class_count());
  const LabelState clamped(graph.node_count(), known);

  Eigen::RowVectorXd init;
  if (config.init == WvrnConfig::Init::kClassPrior) {
    init = class_prior(clamped, graph.class_count(), true, 1.0).transpose();
  } else {
    init = Eigen::RowVectorXd::Constant(c, 1.0 / static_cast<double>(c));
  }
  Eigen::MatrixXd dist(n, c);
  for (Eigen::Index i = 0; i < n; ++i) dist.row(i) = init;
  for (const auto& e : known.entries()) {
    dist.row(static_cast<Eigen::Index>(e.node)).setZero();
    dist(static_cast<Eigen::Index>(e.node), e.label) = 1.0;
  }

  const std::vector<NodeId> unknown = known.unknown_nodes();
  WvrnResult result{clamped, {}, 0, unknown.empty()};
  double weight = 1.0;
  for (int sweep = 0; sweep < config.max_iterations && !unknown.empty(); ++sweep) {
    Eigen::MatrixXd next = dist;
    double max_change = 0.0;
    for (NodeId i : unknown) {
      Eigen::RowVectorXd avg = Eigen::RowVectorXd::Zero(c);
      const auto nbrs = graph.neighbors(i);
      for (NodeId j : nbrs) avg += dist.row(static_cast<Eigen::Index>(j));
      avg /= static_cast<double>(nbrs.size());
      const auto r = static_cast<Eigen::Index>(i);
      next.row(r) = weight * avg + (1.0 - weight) * dist.row(r);
      max_change = std::max(max_change, (next.row(r) - dist.row(r)).cwiseAbs().maxCoeff());
    }
    dist = std::move(next);
    weight *= config.anneal_decay;
    result.sweeps = sweep + 1;
    if (max_change < config.convergence_tol) {
      result.converged = true;
      break;
    }
  }

  for (NodeId i : unknown) {
    result.labels.set_predicted(i, argmax(dist.row(static_cast<Eigen::Index>(i)).transpose()));
  }
  result.distributions = std::move(dist);
  return result;
}

}  // namespace sslcc
