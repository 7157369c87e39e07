#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"
#include "sslcc/label_regularization.hpp"
#include "sslcc/logistic.hpp"
#include "sslcc/naive_bayes.hpp"

namespace sslcc {

/// The five node-classifier configurations for M_AR.
enum class ClassifierKind {
  kLR,        // one LR over [x_A, proportion x_R]
  kLRLR,      // LR on x_A  x  LR on proportion x_R
  kLRLRReg,   // as kLRLR, attribute member label-regularized
  kLRNB,      // LR on x_A  x  NB on multiset x_R
  kLRNBReg,   // as kLRNB, attribute member label-regularized
};

std::string_view to_string(ClassifierKind kind);
/// Accepts "LR", "LR+LR", "LR+LR+Reg", "LR+NB", "LR+NB+Reg". Throws ConfigError.
ClassifierKind parse_classifier_kind(std::string_view name);

constexpr bool is_hybrid(ClassifierKind k) { return k != ClassifierKind::kLR; }
constexpr bool uses_nb(ClassifierKind k) {
  return k == ClassifierKind::kLRNB || k == ClassifierKind::kLRNBReg;
}
constexpr bool uses_label_reg(ClassifierKind k) {
  return k == ClassifierKind::kLRLRReg || k == ClassifierKind::kLRNBReg;
}

struct LabelRegSettings {
  double lambda_per_known = 10.0;
  double epsilon_floor = 1e-10;
  bool beta_weighted_likelihood = true;
};

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::kLR;
  double sigma_sq = 1.0;
  double nb_alpha = 1.0;
  /// Present iff kind is a +Reg kind.
  std::optional<LabelRegSettings> label_reg;
  /// Laplace smoothing of the known-label class prior p(y).
  double prior_smoothing = 1.0;
  OptimizerOptions optimizer;

  static ClassifierSpec make(ClassifierKind kind, double sigma_sq = 1.0, double nb_alpha = 1.0);
  void validate() const;
};

/// Product rule for conditionally independent feature groups:
/// normalize_y( p_attr(y) p_rel(y) / prior(y) ).
Distribution hybrid_combine(const Distribution& p_attr, const Distribution& p_rel,
                            const Distribution& prior);

/// Everything training M_AR needs. Feature matrices cover all
/// nodes; train_nodes selects rows.
struct NodeTrainingData {
  const Eigen::MatrixXd& attributes;
  const ProportionFeatures& proportion;
  const MultisetFeatures& multiset;
  std::span<const NodeId> train_nodes;
  std::span<const ClassId> train_labels;
  /// V^U, the pool that label regularization averages over.
  std::span<const NodeId> unlabeled_nodes;
  /// |V^K|, scales lambda.
  std::size_t known_count = 0;
  /// p(y) for the product rule, also used as the label-regularization target.
  Distribution prior;
};

/// Trained node classifier M_AR. Either a single LR over attributes and
/// proportion features, or a hybrid of an attribute LR with a relational LR
/// or NB member combined by hybrid_combine.
class NodeClassifier {
 public:
  ClassifierKind kind() const { return kind_; }
  std::size_t class_count() const { return static_cast<std::size_t>(prior_.size()); }

  Distribution predict_proba(const Eigen::Ref<const Eigen::VectorXd>& attributes,
                             const Eigen::Ref<const Eigen::VectorXd>& proportion,
                             const Eigen::Ref<const Eigen::VectorXi>& multiset) const;

  /// Relational-only posterior p(y|x_R); hybrid kinds only.
  Distribution predict_relational(const Eigen::Ref<const Eigen::VectorXd>& proportion,
                                  const Eigen::Ref<const Eigen::VectorXi>& multiset) const;

  const LRModel& attribute_model() const { return *attribute_; }
  const std::optional<LRModel>& relational_lr() const { return relational_lr_; }
  const std::optional<NBRelationalModel>& relational_nb() const { return relational_nb_; }
  const Distribution& prior() const { return prior_; }

  /// Builds a hybrid directly from trained members (mainly for tests).
  static NodeClassifier hybrid(LRModel attribute, NBRelationalModel relational, Distribution prior);
  static NodeClassifier hybrid(LRModel attribute, LRModel relational, Distribution prior);
  static NodeClassifier joint(LRModel model, std::size_t class_count);

 private:
  friend NodeClassifier train_node_classifier(const NodeTrainingData&, const ClassifierSpec&);
  ClassifierKind kind_ = ClassifierKind::kLR;
  std::optional<LRModel> attribute_;  // for kLR: the joint model
  std::optional<LRModel> relational_lr_;
  std::optional<NBRelationalModel> relational_nb_;
  Distribution prior_;
};

/// Members are trained separately on the same rows. For +Reg kinds the
/// relational member is trained first, beta = p(y|x_R)/p(y) is frozen, and
/// the attribute member is fit by lr_train_label_reg with
/// lambda = lambda_per_known * |V^K|.
NodeClassifier train_node_classifier(const NodeTrainingData& data, const ClassifierSpec& spec);

/// [x_A | x_R] row-wise concatenation.
Eigen::MatrixXd concat_columns(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right);

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, std::span<const NodeId> rows);
Eigen::MatrixXi select_rows(const Eigen::MatrixXi& m, std::span<const NodeId> rows);

}  // namespace sslcc
