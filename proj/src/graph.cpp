#include "sslcc/graph.hpp"

#include <algorithm>
#include <string>

#include "sslcc/errors.hpp"

namespace sslcc {

KnownLabels::KnownLabels(std::vector<KnownLabel> entries, std::size_t node_count,
                         std::size_t class_count)
    : entries_(std::move(entries)), is_known_(node_count, false) {
  std::sort(entries_.begin(), entries_.end(),
            [](const KnownLabel& a, const KnownLabel& b) { return a.node < b.node; });
  for (const auto& e : entries_) {
    if (e.node >= node_count) {
      throw UsageError("known label refers to node " + std::to_string(e.node) + " outside graph");
    }
    if (e.label < 0 || static_cast<std::size_t>(e.label) >= class_count) {
      throw UsageError("known label class index out of range for node " + std::to_string(e.node));
    }
    if (is_known_[e.node]) {
      throw UsageError("duplicate known label for node " + std::to_string(e.node));
    }
    is_known_[e.node] = true;
  }
}

std::vector<NodeId> KnownLabels::nodes() const {
  std::vector<NodeId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.node);
  return out;
}

std::vector<NodeId> KnownLabels::unknown_nodes() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < is_known_.size(); ++i) {
    if (!is_known_[i]) out.push_back(i);
  }
  return out;
}

DataGraph::DataGraph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges,
                     Eigen::MatrixXd attributes, std::vector<std::string> label_domain,
                     std::vector<ClassId> true_labels)
    : adjacency_(node_count),
      attributes_(std::move(attributes)),
      label_domain_(std::move(label_domain)),
      true_labels_(std::move(true_labels)) {
  if (label_domain_.size() < 2) throw DataError("label domain needs at least two classes");
  if (static_cast<std::size_t>(attributes_.rows()) != node_count) {
    throw DataError("attribute matrix has " + std::to_string(attributes_.rows()) +
                    " rows, expected " + std::to_string(node_count));
  }
  if (!true_labels_.empty()) {
    if (true_labels_.size() != node_count) throw DataError("true label vector has wrong length");
    for (ClassId c : true_labels_) {
      if (c < 0 || static_cast<std::size_t>(c) >= label_domain_.size()) {
        throw DataError("true label outside label domain");
      }
    }
  }
  for (const auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) throw DataError("edge endpoint outside graph");
    if (a == b) continue;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  std::size_t half_edges = 0;
  for (NodeId i = 0; i < node_count; ++i) {
    auto& adj = adjacency_[i];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    if (adj.empty()) throw DataError("node " + std::to_string(i) + " has no links");
    half_edges += adj.size();
  }
  edge_count_ = half_edges / 2;
}

std::span<const NodeId> DataGraph::neighbors(NodeId node) const {
  if (node >= adjacency_.size()) {
    throw UsageError("node index " + std::to_string(node) + " out of range");
  }
  return adjacency_[node];
}

LabelState::LabelState(std::size_t node_count)
    : labels_(node_count, kUnsetLabel), provenance_(node_count, Provenance::kUnset) {}

LabelState::LabelState(std::size_t node_count, const KnownLabels& known) : LabelState(node_count) {
  for (const auto& e : known.entries()) set_known(e.node, e.label);
}

bool LabelState::fully_labeled() const {
  return std::none_of(provenance_.begin(), provenance_.end(),
                      [](Provenance p) { return p == Provenance::kUnset; });
}

void LabelState::set_known(NodeId node, ClassId label) {
  labels_.at(node) = label;
  provenance_.at(node) = Provenance::kKnown;
}

void LabelState::set_predicted(NodeId node, ClassId label) {
  if (provenance_.at(node) == Provenance::kKnown) {
    throw ContractViolation("attempt to overwrite known label of node " + std::to_string(node));
  }
  labels_[node] = label;
  provenance_[node] = Provenance::kPredicted;
}

namespace {

void check_state(const DataGraph& graph, const LabelState& state, NeighborScope scope) {
  if (state.size() != graph.node_count()) throw UsageError("label state size does not match graph");
  if (scope == NeighborScope::kAll && !state.fully_labeled()) {
    throw ContractViolation("relational features requested while some labels are unset");
  }
}

bool counts(const LabelState& state, NodeId j, NeighborScope scope) {
  return scope == NeighborScope::kAll ? true : state.is_known(j);
}

}  // namespace

MultisetFeatures compute_multiset_features(const DataGraph& graph, const LabelState& state,
                                           NeighborScope scope) {
  check_state(graph, state, scope);
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const auto c = static_cast<Eigen::Index>(graph.class_count());
  MultisetFeatures out = MultisetFeatures::Zero(n, c);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    for (NodeId j : graph.neighbors(i)) {
      if (counts(state, j, scope)) ++out(static_cast<Eigen::Index>(i), state.label(j));
    }
  }
  return out;
}

ProportionFeatures compute_proportion_features(const DataGraph& graph, const LabelState& state,
                                               NeighborScope scope) {
  const MultisetFeatures counts = compute_multiset_features(graph, state, scope);
  ProportionFeatures out = ProportionFeatures::Zero(counts.rows(), counts.cols());
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    const int total = counts.row(i).sum();
    if (total == 0) continue;  // only possible under kKnownOnly
    out.row(i) = counts.row(i).cast<double>() / static_cast<double>(total);
  }
  return out;
}

Distribution class_prior(const LabelState& state, std::size_t class_count, bool known_only,
                         double smoothing) {
  if (smoothing < 0.0) throw ConfigError("class prior smoothing must be non-negative");
  Distribution counts = Distribution::Zero(static_cast<Eigen::Index>(class_count));
  double total = 0.0;
  for (NodeId i = 0; i < state.size(); ++i) {
    const bool selected = known_only ? state.is_known(i) : state.is_set(i);
    if (!selected) continue;
    counts(state.label(i)) += 1.0;
    total += 1.0;
  }
  if (known_only && total == 0.0) throw ConfigError("class prior needs at least one known label");
  const double denom = total + static_cast<double>(class_count) * smoothing;
  if (denom <= 0.0) throw ConfigError("class prior undefined: no labels and zero smoothing");
  return (counts.array() + smoothing) / denom;
}

ClassId argmax(const Eigen::Ref<const Eigen::VectorXd>& values) {
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < values.size(); ++c) {
    if (values(c) > values(best)) best = c;
  }
  return static_cast<ClassId>(best);
}

}  // namespace sslcc
