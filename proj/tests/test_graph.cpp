#include <doctest.h>

#include <random>
#include <set>

#include "sslcc/errors.hpp"
#include "sslcc/graph.hpp"
#include "test_util.hpp"

using namespace sslcc;
using sslcc::testing::make_graph;

TEST_CASE("neighbors are sorted and deduplicated") {
  const DataGraph path = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(std::vector<NodeId>(path.neighbors(1).begin(), path.neighbors(1).end()) ==
        std::vector<NodeId>{0, 2});
  CHECK(std::vector<NodeId>(path.neighbors(0).begin(), path.neighbors(0).end()) ==
        std::vector<NodeId>{1});

  const DataGraph dup = make_graph(2, {{0, 1}, {1, 0}});
  CHECK(dup.edge_count() == 1);
  CHECK(dup.neighbors(0).size() == 1);
  CHECK(dup.neighbors(0)[0] == 1);

  CHECK_THROWS_AS(path.neighbors(3), UsageError);
}

TEST_CASE("graph rejects isolated nodes and single-class domains") {
  CHECK_THROWS_AS(make_graph(3, {{0, 1}}), DataError);
  CHECK_THROWS_AS(make_graph(2, {{0, 1}}, 1), DataError);
  // Self-loops are dropped, which can leave a node isolated.
  CHECK_THROWS_AS(make_graph(2, {{0, 0}, {1, 1}}), DataError);
}

TEST_CASE("known labels cannot be overwritten") {
  const KnownLabels known({{1, 0}}, 3, 2);
  LabelState state(3, known);
  CHECK(state.is_known(1));
  CHECK_FALSE(state.fully_labeled());
  CHECK_THROWS_AS(state.set_predicted(1, 1), ContractViolation);
  state.set_predicted(0, 1);
  CHECK(state.provenance(0) == Provenance::kPredicted);
  CHECK_THROWS_AS(KnownLabels({{0, 2}}, 3, 2), UsageError);
  CHECK_THROWS_AS(KnownLabels({{0, 1}, {0, 1}}, 3, 2), UsageError);
}

TEST_CASE("proportion and multiset features count neighbor labels") {
  // Star: node 0 linked to 1, 2, 3 labeled A, A, B.
  const DataGraph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  LabelState state(4);
  state.set_predicted(0, 0);
  state.set_known(1, 0);
  state.set_known(2, 0);
  state.set_predicted(3, 1);

  const ProportionFeatures prop = compute_proportion_features(star, state);
  CHECK(prop(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(prop(0, 1) == doctest::Approx(1.0 / 3.0));
  const MultisetFeatures counts = compute_multiset_features(star, state);
  CHECK(counts(0, 0) == 2);
  CHECK(counts(0, 1) == 1);
  // Degree-1 node whose neighbor is A.
  CHECK(counts(1, 0) == 1);
  CHECK(counts(1, 1) == 0);

  SUBCASE("all neighbors share one class") {
    const DataGraph star4 = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    LabelState s(5);
    for (NodeId i = 0; i < 5; ++i) s.set_predicted(i, 1);
    const ProportionFeatures p = compute_proportion_features(star4, s);
    CHECK(p(0, 0) == 0.0);
    CHECK(p(0, 1) == 1.0);
  }

  SUBCASE("unset labels are a contract violation") {
    LabelState partial(4);
    partial.set_known(0, 0);
    CHECK_THROWS_AS(compute_proportion_features(star, partial), ContractViolation);
    CHECK_THROWS_AS(compute_multiset_features(star, partial), ContractViolation);
  }
}

TEST_CASE("4-cycle with alternating labels") {
  // Hand enumeration: each node's two neighbors carry the opposite label.
  const DataGraph cycle = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  LabelState state(4);
  for (NodeId i = 0; i < 4; ++i) state.set_predicted(i, static_cast<ClassId>(i % 2));
  const ProportionFeatures prop = compute_proportion_features(cycle, state);
  for (Eigen::Index i = 0; i < 4; ++i) {
    const int opposite = 1 - static_cast<int>(i % 2);
    CHECK(prop(i, opposite) == 1.0);
    CHECK(prop(i, 1 - opposite) == 0.0);
  }
}

TEST_CASE("feature invariants on a random graph") {
  std::mt19937_64 rng(42);
  const std::size_t n = 50;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  for (int e = 0; e < 80; ++e) edges.emplace_back(pick(rng), pick(rng));
  const DataGraph g = make_graph(n, edges, 3);

  // Degree computed independently from the raw edge list.
  std::vector<std::set<NodeId>> adj(n);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    adj[a].insert(b);
    adj[b].insert(a);
  }

  LabelState state(n);
  std::uniform_int_distribution<ClassId> cls(0, 2);
  for (NodeId i = 0; i < n; ++i) state.set_predicted(i, cls(rng));
  const MultisetFeatures counts = compute_multiset_features(g, state);
  const ProportionFeatures prop = compute_proportion_features(g, state);

  for (NodeId i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    CHECK(static_cast<std::size_t>(counts.row(r).sum()) == adj[i].size());
    CHECK(prop.row(r).sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index c = 0; c < 3; ++c) {
      CHECK(prop(r, c) >= 0.0);
      CHECK(prop(r, c) * static_cast<double>(g.degree(i)) ==
            doctest::Approx(static_cast<double>(counts(r, c))).epsilon(1e-12));
    }
  }

  SUBCASE("relabeling one node only changes its neighbors' features") {
    LabelState changed = state;
    const NodeId j = 7;
    changed.set_predicted(j, (state.label(j) + 1) % 3);
    const MultisetFeatures after = compute_multiset_features(g, changed);
    for (NodeId i = 0; i < n; ++i) {
      const bool adjacent = adj[j].count(i) > 0;
      const bool same = after.row(static_cast<Eigen::Index>(i)) == counts.row(static_cast<Eigen::Index>(i));
      CHECK(same != adjacent);
    }
  }

  SUBCASE("feature computation is pure") {
    CHECK(compute_proportion_features(g, state) == prop);
    CHECK(compute_multiset_features(g, state) == counts);
  }
}

TEST_CASE("known-only scope ignores non-known neighbors") {
  const DataGraph path = make_graph(3, {{0, 1}, {1, 2}});
  const KnownLabels known({{0, 1}}, 3, 2);
  const LabelState state(3, known);
  const ProportionFeatures prop = compute_proportion_features(path, state, NeighborScope::kKnownOnly);
  CHECK(prop(1, 1) == 1.0);
  CHECK(prop.row(0).sum() == 0.0);  // node 0's only neighbor is unknown
  CHECK(prop.row(2).sum() == 0.0);
}

TEST_CASE("class prior") {
  const std::size_t n = 4;
  SUBCASE("balanced known labels") {
    const LabelState s(n, KnownLabels({{0, 0}, {1, 0}, {2, 1}, {3, 1}}, n, 2));
    const Distribution p = class_prior(s, 2, true, 0.0);
    CHECK(p(0) == 0.5);
    CHECK(p(1) == 0.5);
  }
  SUBCASE("Laplace smoothing") {
    const LabelState s(n, KnownLabels({{0, 0}}, n, 2));
    const Distribution p = class_prior(s, 2, true, 1.0);
    CHECK(p(0) == doctest::Approx(2.0 / 3.0));
    CHECK(p(1) == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("degenerate known set") {
    const LabelState s(n, KnownLabels({{0, 0}, {1, 0}}, n, 2));
    const Distribution raw = class_prior(s, 2, true, 0.0);
    CHECK(raw(0) == 1.0);
    CHECK(raw(1) == 0.0);
    const Distribution smooth = class_prior(s, 2, true, 0.5);
    CHECK((smooth.array() > 0.0).all());
    CHECK(smooth.sum() == doctest::Approx(1.0));
  }
  SUBCASE("empty known set") {
    const LabelState s(n);
    CHECK_THROWS_AS(class_prior(s, 2, true, 1.0), ConfigError);
  }
}

TEST_CASE("argmax breaks ties toward the lowest index") {
  CHECK(argmax(Eigen::Vector3d(0.2, 0.4, 0.4)) == 1);
  CHECK(argmax(Eigen::Vector2d(0.5, 0.5)) == 0);
}
