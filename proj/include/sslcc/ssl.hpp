#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sslcc/graph.hpp"
#include "sslcc/inference.hpp"
#include "sslcc/logistic.hpp"
#include "sslcc/node_classifier.hpp"

namespace sslcc {

/// Learning-loop variant: which rows train M_AR, and how many
/// relearn/re-infer rounds to run.
struct SslVariant {
  bool learn_from_all = true;
  int n_iterations = 1;

  static SslVariant all_em(int n = 10) { return {true, n}; }
  static SslVariant all_onepass() { return {true, 1}; }
  static SslVariant known_em(int n = 10) { return {false, n}; }
  static SslVariant known_onepass() { return {false, 1}; }

  /// "ALL-EM", "ALL-ONEPASS", "KNOWN-EM", "KNOWN-ONEPASS".
  std::string name() const;
  void validate() const;
};

struct SslResult {
  LabelState labels;
  /// Rows M_AR was trained on, one entry per loop iteration.
  std::vector<std::size_t> training_rows;
  /// Classes absent from the M_AR training rows, summed over iterations.
  std::size_t missing_class_events = 0;
};

/// Attribute-only bootstrap classifier M_A, trained on known nodes.
LRModel train_attribute_model(const DataGraph& graph, const KnownLabels& known,
                              const ClassifierSpec& spec);

/// The generic semi-supervised learning loop:
///   M_A <- known attributes; Y^U <- argmax M_A
///   repeat n times:
///     X_R <- relational features of Y^K u Y^U
///     M_AR <- trained on all nodes (learn_from_all) or on V^K only
///     Y^U <- ica(M_A, M_AR)
SslResult ssl_learn(const DataGraph& graph, const KnownLabels& known, const SslVariant& variant,
                    const ClassifierSpec& spec, const IcaConfig& ica_config = {});

/// Same classifier family with label regularization removed.
ClassifierSpec without_label_reg(const ClassifierSpec& spec);

/// Baseline: M_AR learned from known nodes with relational features that
/// only see known neighbors, then a single ICA run. Never label-regularized.
SslResult no_ssl(const DataGraph& graph, const KnownLabels& known, const ClassifierSpec& spec,
                 const IcaConfig& ica_config = {});

/// Baseline: one attribute-only prediction per unknown node.
SslResult attr_only(const DataGraph& graph, const KnownLabels& known, const ClassifierSpec& spec);

}  // namespace sslcc
