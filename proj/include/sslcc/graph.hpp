#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sslcc {

using NodeId = std::size_t;
using ClassId = int;

/// Probability distribution over the label domain, one entry per class.
using Distribution = Eigen::VectorXd;

/// Proportion relational features: row i holds the fraction of node i's
/// neighbors carrying each class.
using ProportionFeatures = Eigen::MatrixXd;

/// Multiset relational features: row i holds the neighbor label counts of
/// node i.
using MultisetFeatures = Eigen::MatrixXi;

struct KnownLabel {
  NodeId node;
  ClassId label;
  bool operator==(const KnownLabel&) const = default;
};

/// The V^K / Y^K pair for one trial: sorted by node, no duplicates.
class KnownLabels {
 public:
  KnownLabels() = default;
  KnownLabels(std::vector<KnownLabel> entries, std::size_t node_count, std::size_t class_count);

  const std::vector<KnownLabel>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(NodeId node) const { return is_known_.size() > node && is_known_[node]; }
  std::vector<NodeId> nodes() const;
  /// Nodes not in V^K, ascending.
  std::vector<NodeId> unknown_nodes() const;

 private:
  std::vector<KnownLabel> entries_;
  std::vector<bool> is_known_;
};

/// Undirected attributed graph. Immutable once constructed and safe to
/// share between concurrently running trials.
class DataGraph {
 public:
  /// Builds from an undirected edge list. Edges are symmetrized and
  /// deduplicated; self-loops are dropped. Throws DataError when a node ends
  /// up with degree zero or the label domain has fewer than two classes.
  DataGraph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges,
            Eigen::MatrixXd attributes, std::vector<std::string> label_domain,
            std::vector<ClassId> true_labels = {});

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t class_count() const { return label_domain_.size(); }
  std::size_t attribute_dim() const { return static_cast<std::size_t>(attributes_.cols()); }
  std::size_t edge_count() const { return edge_count_; }

  /// Sorted, deduplicated neighbor list. Throws UsageError on a bad index.
  std::span<const NodeId> neighbors(NodeId node) const;
  std::size_t degree(NodeId node) const { return neighbors(node).size(); }

  const Eigen::MatrixXd& attributes() const { return attributes_; }
  const std::vector<std::string>& label_domain() const { return label_domain_; }

  /// Ground-truth labels when the graph was loaded from a labeled dataset.
  bool has_truth() const { return !true_labels_.empty(); }
  const std::vector<ClassId>& true_labels() const { return true_labels_; }

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  Eigen::MatrixXd attributes_;
  std::vector<std::string> label_domain_;
  std::vector<ClassId> true_labels_;
};

enum class Provenance : std::uint8_t { kUnset, kKnown, kPredicted };

/// Working label set Y^K ∪ Y^U. Known entries cannot be overwritten.
class LabelState {
 public:
  static constexpr ClassId kUnsetLabel = -1;

  explicit LabelState(std::size_t node_count);
  LabelState(std::size_t node_count, const KnownLabels& known);

  std::size_t size() const { return labels_.size(); }
  ClassId label(NodeId node) const { return labels_.at(node); }
  Provenance provenance(NodeId node) const { return provenance_.at(node); }
  bool is_known(NodeId node) const { return provenance(node) == Provenance::kKnown; }
  bool is_set(NodeId node) const { return provenance(node) != Provenance::kUnset; }
  bool fully_labeled() const;

  void set_known(NodeId node, ClassId label);
  /// Throws ContractViolation if the node carries a known label.
  void set_predicted(NodeId node, ClassId label);

  const std::vector<ClassId>& labels() const { return labels_; }

  bool operator==(const LabelState&) const = default;

 private:
  std::vector<ClassId> labels_;
  std::vector<Provenance> provenance_;
};

/// Which neighbors contribute to relational features.
enum class NeighborScope {
  kAll,        // every neighbor; all labels must be set
  kKnownOnly,  // only neighbors with a known label; others are ignored
};

ProportionFeatures compute_proportion_features(const DataGraph& graph, const LabelState& state,
                                               NeighborScope scope = NeighborScope::kAll);

MultisetFeatures compute_multiset_features(const DataGraph& graph, const LabelState& state,
                                           NeighborScope scope = NeighborScope::kAll);

/// (count_c + smoothing) / (N + |C| smoothing) over known nodes, or over
/// every labeled node when known_only is false.
Distribution class_prior(const LabelState& state, std::size_t class_count, bool known_only = true,
                         double smoothing = 1.0);

/// Index of the largest entry; ties go to the lowest index.
ClassId argmax(const Eigen::Ref<const Eigen::VectorXd>& values);

}  // namespace sslcc
