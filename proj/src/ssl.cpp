#include "sslcc/ssl.hpp"

#include <algorithm>

#include "sslcc/errors.hpp"

namespace sslcc {

std::string SslVariant::name() const {
  std::string out = learn_from_all ? "ALL-" : "KNOWN-";
  if (n_iterations == 1) return out + "ONEPASS";
  if (n_iterations == 10) return out + "EM";
  return out + "EM(" + std::to_string(n_iterations) + ")";
}

void SslVariant::validate() const {
  if (n_iterations < 1) throw ConfigError("SSL variant needs n_iterations >= 1");
}

namespace {

std::vector<ClassId> known_classes(const KnownLabels& known) {
  std::vector<ClassId> out;
  out.reserve(known.size());
  for (const auto& e : known.entries()) out.push_back(e.label);
  return out;
}

std::size_t count_missing_classes(std::span<const ClassId> labels, std::size_t class_count) {
  std::vector<bool> seen(class_count, false);
  for (ClassId y : labels) seen[static_cast<std::size_t>(y)] = true;
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), false));
}

void check_inputs(const DataGraph& graph, const KnownLabels& known) {
  if (known.empty()) throw ConfigError("at least one known label is required");
  if (known.nodes().back() >= graph.node_count()) throw UsageError("known node outside graph");
}

}  // namespace

ClassifierSpec without_label_reg(const ClassifierSpec& spec) {
  ClassifierSpec out = spec;
  if (spec.kind == ClassifierKind::kLRLRReg) out.kind = ClassifierKind::kLRLR;
  if (spec.kind == ClassifierKind::kLRNBReg) out.kind = ClassifierKind::kLRNB;
  out.label_reg.reset();
  return out;
}

LRModel train_attribute_model(const DataGraph& graph, const KnownLabels& known,
                              const ClassifierSpec& spec) {
  const std::vector<NodeId> nodes = known.nodes();
  const std::vector<ClassId> labels = known_classes(known);
  return lr_train(select_rows(graph.attributes(), nodes), labels, graph.class_count(),
                  spec.sigma_sq, spec.optimizer);
}

SslResult ssl_learn(const DataGraph& graph, const KnownLabels& known, const SslVariant& variant,
                    const ClassifierSpec& spec, const IcaConfig& ica_config) {
  check_inputs(graph, known);
  variant.validate();
  spec.validate();

  const LRModel attribute_model = train_attribute_model(graph, known, spec);
  LabelState state = bootstrap_labels(graph, known, attribute_model);
  const Distribution prior =
      class_prior(state, graph.class_count(), true, spec.prior_smoothing);
  const std::vector<NodeId> known_nodes = known.nodes();
  const std::vector<NodeId> unknown_nodes = known.unknown_nodes();

  std::vector<NodeId> all_nodes(graph.node_count());
  for (NodeId i = 0; i < all_nodes.size(); ++i) all_nodes[i] = i;

  SslResult result{state, {}, 0};
  if (unknown_nodes.empty()) return result;

  for (int iter = 0; iter < variant.n_iterations; ++iter) {
    const ProportionFeatures proportion = compute_proportion_features(graph, state);
    const MultisetFeatures multiset = compute_multiset_features(graph, state);

    const std::vector<NodeId>& train_nodes = variant.learn_from_all ? all_nodes : known_nodes;
    std::vector<ClassId> train_labels;
    train_labels.reserve(train_nodes.size());
    for (NodeId i : train_nodes) train_labels.push_back(state.label(i));

    const NodeTrainingData data{graph.attributes(), proportion,    multiset,      train_nodes,
                                train_labels,       unknown_nodes, known.size(), prior};
    const NodeClassifier node_model = train_node_classifier(data, spec);
    result.training_rows.push_back(train_nodes.size());
    result.missing_class_events += count_missing_classes(train_labels, graph.class_count());

    state = ica(graph, known, attribute_model, node_model, ica_config);
  }
  result.labels = std::move(state);
  return result;
}

SslResult no_ssl(const DataGraph& graph, const KnownLabels& known, const ClassifierSpec& spec,
                 const IcaConfig& ica_config) {
  check_inputs(graph, known);
  const ClassifierSpec plain = without_label_reg(spec);
  plain.validate();

  const LRModel attribute_model = train_attribute_model(graph, known, plain);
  const LabelState known_state(graph.node_count(), known);
  const Distribution prior =
      class_prior(known_state, graph.class_count(), true, plain.prior_smoothing);
  const ProportionFeatures proportion =
      compute_proportion_features(graph, known_state, NeighborScope::kKnownOnly);
  const MultisetFeatures multiset =
      compute_multiset_features(graph, known_state, NeighborScope::kKnownOnly);

  const std::vector<NodeId> known_nodes = known.nodes();
  const std::vector<ClassId> labels = known_classes(known);
  const std::vector<NodeId> unknown_nodes = known.unknown_nodes();
  const NodeTrainingData data{graph.attributes(), proportion, multiset,     known_nodes,
                              labels,             {},         known.size(), prior};
  const NodeClassifier node_model = train_node_classifier(data, plain);

  SslResult result{LabelState(graph.node_count(), known), {known_nodes.size()},
                   count_missing_classes(labels, graph.class_count())};
  if (unknown_nodes.empty()) return result;
  result.labels = ica(graph, known, attribute_model, node_model, ica_config);
  return result;
}

SslResult attr_only(const DataGraph& graph, const KnownLabels& known, const ClassifierSpec& spec) {
  check_inputs(graph, known);
  const LRModel attribute_model = train_attribute_model(graph, known, spec);
  return SslResult{bootstrap_labels(graph, known, attribute_model), {known.size()}, 0};
}

}  // namespace sslcc
