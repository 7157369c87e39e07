#include <doctest.h>

#include <random>

#include "sslcc/data_io.hpp"
#include "sslcc/harness.hpp"
#include "sslcc/ssl.hpp"
#include "sslcc/synthetic.hpp"
#include "test_util.hpp"

using namespace sslcc;
using sslcc::testing::make_graph;
using sslcc::testing::random_matrix;

namespace {

const ClassifierKind kAllKinds[] = {ClassifierKind::kLR, ClassifierKind::kLRLR,
                                    ClassifierKind::kLRLRReg, ClassifierKind::kLRNB,
                                    ClassifierKind::kLRNBReg};

DataGraph synthetic_graph(std::size_t nodes, std::uint64_t seed, double noise = 1.5) {
  SyntheticOptions o;
  o.nodes = nodes;
  o.attr_noise = noise;
  o.seed = seed;
  return build_graph(generate_synthetic(o));
}

}  // namespace

TEST_CASE("variant naming and validation") {
  CHECK(SslVariant::all_em().name() == "ALL-EM");
  CHECK(SslVariant::all_onepass().name() == "ALL-ONEPASS");
  CHECK(SslVariant::known_em().name() == "KNOWN-EM");
  CHECK(SslVariant::known_onepass().name() == "KNOWN-ONEPASS");
  CHECK(SslVariant::all_em(1).name() == "ALL-ONEPASS");
  CHECK_THROWS(SslVariant::all_em(0).validate());
}

TEST_CASE("ONEPASS equals EM with one round") {
  const DataGraph g = synthetic_graph(120, 5);
  const KnownLabels known = sample_known(g, 0.1, 3);
  for (ClassifierKind kind : kAllKinds) {
    const ClassifierSpec spec = ClassifierSpec::make(kind);
    CHECK(ssl_learn(g, known, SslVariant::all_onepass(), spec).labels ==
          ssl_learn(g, known, SslVariant::all_em(1), spec).labels);
    CHECK(ssl_learn(g, known, SslVariant::known_onepass(), spec).labels ==
          ssl_learn(g, known, SslVariant::known_em(1), spec).labels);
  }
}

TEST_CASE("training rows per loop iteration") {
  const DataGraph g = synthetic_graph(80, 2);
  const KnownLabels known = sample_known(g, 0.2, 4);
  const ClassifierSpec spec = ClassifierSpec::make(ClassifierKind::kLRNB);
  const SslResult all = ssl_learn(g, known, SslVariant::all_em(3), spec);
  CHECK(all.training_rows == std::vector<std::size_t>(3, g.node_count()));
  const SslResult kn = ssl_learn(g, known, SslVariant::known_em(3), spec);
  CHECK(kn.training_rows == std::vector<std::size_t>(3, known.size()));
}

TEST_CASE("KNOWN variants train on known rows with features from predicted neighbors") {
  const DataGraph g = synthetic_graph(100, 7, 2.5);
  const KnownLabels known = sample_known(g, 0.15, 9);
  for (ClassifierKind kind : {ClassifierKind::kLRLR, ClassifierKind::kLRNB}) {
    const ClassifierSpec spec = ClassifierSpec::make(kind);
    // Reference pipeline written out step by step.
    const LRModel m_a = train_attribute_model(g, known, spec);
    const LabelState boot = bootstrap_labels(g, known, m_a);
    const ProportionFeatures prop = compute_proportion_features(g, boot);
    const MultisetFeatures counts = compute_multiset_features(g, boot);
    const std::vector<NodeId> nodes = known.nodes();
    std::vector<ClassId> labels;
    for (const auto& e : known.entries()) labels.push_back(e.label);
    const std::vector<NodeId> unknown = known.unknown_nodes();
    const NodeTrainingData data{g.attributes(), prop, counts, nodes, labels, unknown, known.size(),
                                class_prior(boot, 2, true, 1.0)};
    const NodeClassifier m_ar = train_node_classifier(data, spec);
    const LabelState expected = ica(g, known, m_a, m_ar);
    CHECK(ssl_learn(g, known, SslVariant::known_onepass(), spec).labels == expected);
  }
}

TEST_CASE("fully labeled graph returns the known labels") {
  const DataGraph g = make_graph(3, {{0, 1}, {1, 2}}, 2, 1, {0, 1, 0});
  const KnownLabels known({{0, 0}, {1, 1}, {2, 0}}, 3, 2);
  const SslResult r = ssl_learn(g, known, SslVariant::all_em(), ClassifierSpec::make(ClassifierKind::kLRNB));
  CHECK(r.labels == LabelState(3, known));
  CHECK(r.training_rows.empty());
}

TEST_CASE("a class missing from the training rows is not an error") {
  const DataGraph g = synthetic_graph(60, 3);
  std::vector<KnownLabel> entries;
  for (NodeId i = 0; i < g.node_count() && entries.size() < 4; ++i)
    if (g.true_labels()[i] == 0) entries.push_back({i, 0});
  const KnownLabels known(entries, g.node_count(), 2);
  const SslResult r = ssl_learn(g, known, SslVariant::known_em(2), ClassifierSpec::make(ClassifierKind::kLRLR));
  CHECK(r.missing_class_events == 2);
  CHECK(r.labels.fully_labeled());
}

TEST_CASE("NO-SSL baseline") {
  SUBCASE("coincides with KNOWN-ONEPASS when known nodes only link to known nodes") {
    // Two components: 0..5 fully known, 6..11 fully unknown.
    std::mt19937_64 rng(41);
    const Eigen::MatrixXd attrs = random_matrix(12, 2, rng);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < 6; ++i) edges.emplace_back(i, (i + 1) % 6);
    for (NodeId i = 6; i < 12; ++i) edges.emplace_back(i, 6 + (i + 1 - 6) % 6);
    edges.emplace_back(0, 3);
    const DataGraph g = make_graph(attrs, edges, 2);
    const KnownLabels known({{0, 0}, {1, 0}, {2, 1}, {3, 0}, {4, 1}, {5, 1}}, 12, 2);
    for (ClassifierKind kind : {ClassifierKind::kLR, ClassifierKind::kLRLR, ClassifierKind::kLRNB}) {
      const ClassifierSpec spec = ClassifierSpec::make(kind);
      CHECK(no_ssl(g, known, spec).labels ==
            ssl_learn(g, known, SslVariant::known_onepass(), spec).labels);
    }
  }

  SUBCASE("no known-known links reduce LR+NB to the attribute model") {
    // Known nodes 0, 2, 4 sit on a cycle separated by unknown nodes.
    std::mt19937_64 rng(43);
    const Eigen::MatrixXd attrs = random_matrix(6, 2, rng);
    const DataGraph g = make_graph(attrs, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, 2);
    const KnownLabels known({{0, 0}, {2, 1}, {4, 0}}, 6, 2);
    const ClassifierSpec spec = ClassifierSpec::make(ClassifierKind::kLRNB);
    CHECK(no_ssl(g, known, spec).labels == attr_only(g, known, spec).labels);
  }

  SUBCASE("label regularization is never used") {
    const DataGraph g = synthetic_graph(80, 11);
    const KnownLabels known = sample_known(g, 0.1, 2);
    CHECK(no_ssl(g, known, ClassifierSpec::make(ClassifierKind::kLRNBReg)).labels ==
          no_ssl(g, known, ClassifierSpec::make(ClassifierKind::kLRNB)).labels);
  }

  SUBCASE("beats attributes alone on a homophilous graph") {
    const DataGraph g = synthetic_graph(300, 21, 2.0);
    const ClassifierSpec spec = ClassifierSpec::make(ClassifierKind::kLRNB);
    std::vector<double> base, relational;
    for (std::uint64_t t = 0; t < 10; ++t) {
      const KnownLabels known = sample_known(g, 0.2, 100 + t);
      const std::vector<NodeId> test = known.unknown_nodes();
      base.push_back(accuracy(attr_only(g, known, spec).labels, g.true_labels(), test));
      relational.push_back(accuracy(no_ssl(g, known, spec).labels, g.true_labels(), test));
    }
    CHECK(mean(relational) >= mean(base));
  }
}

TEST_CASE("ATTR-ONLY with uninformative attributes predicts the majority known class") {
  const DataGraph g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, 2, 3);
  const KnownLabels known({{0, 1}, {2, 1}, {3, 0}}, 6, 2);
  const SslResult r = attr_only(g, known, ClassifierSpec::make(ClassifierKind::kLR));
  for (NodeId i : known.unknown_nodes()) CHECK(r.labels.label(i) == 1);
}
