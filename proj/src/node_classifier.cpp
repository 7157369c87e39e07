#include "sslcc/node_classifier.hpp"

#include <string>

#include "sslcc/errors.hpp"

namespace sslcc {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kLR: return "LR";
    case ClassifierKind::kLRLR: return "LR+LR";
    case ClassifierKind::kLRLRReg: return "LR+LR+Reg";
    case ClassifierKind::kLRNB: return "LR+NB";
    case ClassifierKind::kLRNBReg: return "LR+NB+Reg";
  }
  return "?";
}

ClassifierKind parse_classifier_kind(std::string_view name) {
  for (auto k : {ClassifierKind::kLR, ClassifierKind::kLRLR, ClassifierKind::kLRLRReg,
                 ClassifierKind::kLRNB, ClassifierKind::kLRNBReg}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown classifier '" + std::string(name) + "'");
}

ClassifierSpec ClassifierSpec::make(ClassifierKind kind, double sigma_sq, double nb_alpha) {
  ClassifierSpec spec;
  spec.kind = kind;
  spec.sigma_sq = sigma_sq;
  spec.nb_alpha = nb_alpha;
  if (uses_label_reg(kind)) spec.label_reg = LabelRegSettings{};
  return spec;
}

void ClassifierSpec::validate() const {
  if (!(sigma_sq > 0.0)) throw ConfigError("sigma_sq must be positive");
  if (uses_nb(kind) && !(nb_alpha > 0.0)) throw ConfigError("nb_alpha must be positive");
  if (label_reg.has_value() != uses_label_reg(kind)) {
    throw ConfigError("label regularization settings must be present exactly for +Reg classifiers");
  }
  if (label_reg && label_reg->lambda_per_known < 0.0) throw ConfigError("lambda must be >= 0");
  if (prior_smoothing < 0.0) throw ConfigError("prior smoothing must be >= 0");
}

Distribution hybrid_combine(const Distribution& p_attr, const Distribution& p_rel,
                            const Distribution& prior) {
  if (p_attr.size() != p_rel.size() || p_attr.size() != prior.size()) {
    throw UsageError("hybrid_combine inputs differ in length");
  }
  if ((prior.array() <= 0.0).any()) throw ContractViolation("hybrid_combine prior has a zero entry");
  Distribution out = p_attr.array() * p_rel.array() / prior.array();
  const double total = out.sum();
  if (!(total > 0.0)) {
    // Both members put all mass on disjoint classes; fall back to log space.
    Eigen::RowVectorXd logs =
        (p_attr.array().max(1e-300).log() + p_rel.array().max(1e-300).log() - prior.array().log())
            .matrix()
            .transpose();
    return softmax_rows(logs).transpose();
  }
  return out / total;
}

NodeClassifier NodeClassifier::hybrid(LRModel attribute, NBRelationalModel relational,
                                      Distribution prior) {
  NodeClassifier m;
  m.kind_ = ClassifierKind::kLRNB;
  m.attribute_ = std::move(attribute);
  m.relational_nb_ = std::move(relational);
  m.prior_ = std::move(prior);
  return m;
}

NodeClassifier NodeClassifier::hybrid(LRModel attribute, LRModel relational, Distribution prior) {
  NodeClassifier m;
  m.kind_ = ClassifierKind::kLRLR;
  m.attribute_ = std::move(attribute);
  m.relational_lr_ = std::move(relational);
  m.prior_ = std::move(prior);
  return m;
}

NodeClassifier NodeClassifier::joint(LRModel model, std::size_t class_count) {
  NodeClassifier m;
  m.kind_ = ClassifierKind::kLR;
  m.attribute_ = std::move(model);
  m.prior_ = Distribution::Constant(static_cast<Eigen::Index>(class_count),
                                    1.0 / static_cast<double>(class_count));
  return m;
}

Distribution NodeClassifier::predict_relational(
    const Eigen::Ref<const Eigen::VectorXd>& proportion,
    const Eigen::Ref<const Eigen::VectorXi>& multiset) const {
  if (relational_nb_) return nb_relational_predict(*relational_nb_, multiset);
  if (relational_lr_) return lr_predict_proba(*relational_lr_, proportion);
  throw UsageError("non-hybrid classifier has no relational member");
}

Distribution NodeClassifier::predict_proba(const Eigen::Ref<const Eigen::VectorXd>& attributes,
                                           const Eigen::Ref<const Eigen::VectorXd>& proportion,
                                           const Eigen::Ref<const Eigen::VectorXi>& multiset) const {
  if (kind_ == ClassifierKind::kLR) {
    Eigen::VectorXd x(attributes.size() + proportion.size());
    x << attributes, proportion;
    return lr_predict_proba(*attribute_, x);
  }
  return hybrid_combine(lr_predict_proba(*attribute_, attributes),
                        predict_relational(proportion, multiset), prior_);
}

Eigen::MatrixXd concat_columns(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right) {
  if (left.rows() != right.rows()) throw UsageError("concat_columns row mismatch");
  Eigen::MatrixXd out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, std::span<const NodeId> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  }
  return out;
}

Eigen::MatrixXi select_rows(const Eigen::MatrixXi& m, std::span<const NodeId> rows) {
  Eigen::MatrixXi out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  }
  return out;
}

namespace {

// beta(i, y) = p(y|x_R,i) / p(y), rescaled per row to sum to one.
Eigen::MatrixXd relational_beta(const NodeClassifier& partial, const ProportionFeatures& proportion,
                                const MultisetFeatures& multiset, std::span<const NodeId> nodes,
                                const Distribution& prior) {
  Eigen::MatrixXd beta(static_cast<Eigen::Index>(nodes.size()), prior.size());
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(nodes[r]);
    const Distribution p_rel = partial.predict_relational(proportion.row(i).transpose(),
                                                          multiset.row(i).transpose());
    Eigen::VectorXd b = (p_rel.array() / prior.array()).max(1e-300);
    beta.row(static_cast<Eigen::Index>(r)) = (b / b.sum()).transpose();
  }
  return beta;
}

}  // namespace

NodeClassifier train_node_classifier(const NodeTrainingData& data, const ClassifierSpec& spec) {
  spec.validate();
  const auto class_count = static_cast<std::size_t>(data.prior.size());
  if (data.train_nodes.size() != data.train_labels.size()) {
    throw UsageError("train_nodes and train_labels differ in length");
  }
  if ((data.prior.array() <= 0.0).any()) {
    throw ContractViolation("class prior must be strictly positive");
  }

  const Eigen::MatrixXd attr_train = select_rows(data.attributes, data.train_nodes);
  NodeClassifier model;
  model.kind_ = spec.kind;
  model.prior_ = data.prior;

  if (spec.kind == ClassifierKind::kLR) {
    const Eigen::MatrixXd joint =
        concat_columns(attr_train, select_rows(data.proportion, data.train_nodes));
    model.attribute_ =
        lr_train(joint, data.train_labels, class_count, spec.sigma_sq, spec.optimizer);
    return model;
  }

  if (uses_nb(spec.kind)) {
    model.relational_nb_ = nb_relational_train(select_rows(data.multiset, data.train_nodes),
                                               data.train_labels, class_count, spec.nb_alpha);
  } else {
    model.relational_lr_ = lr_train(select_rows(data.proportion, data.train_nodes),
                                    data.train_labels, class_count, spec.sigma_sq, spec.optimizer);
  }

  if (!uses_label_reg(spec.kind)) {
    model.attribute_ =
        lr_train(attr_train, data.train_labels, class_count, spec.sigma_sq, spec.optimizer);
    return model;
  }

  const LabelRegSettings& settings = *spec.label_reg;
  LabelRegConfig config;
  config.target_dist = data.prior;
  config.lambda = settings.lambda_per_known * static_cast<double>(data.known_count);
  config.epsilon_floor = settings.epsilon_floor;
  config.beta_weighted_likelihood = settings.beta_weighted_likelihood;

  const Eigen::MatrixXd train_beta =
      relational_beta(model, data.proportion, data.multiset, data.train_nodes, data.prior);
  Eigen::MatrixXd unlabeled_attr(0, data.attributes.cols());
  Eigen::MatrixXd unlabeled_beta;
  if (!data.unlabeled_nodes.empty()) {
    unlabeled_attr = select_rows(data.attributes, data.unlabeled_nodes);
    unlabeled_beta =
        relational_beta(model, data.proportion, data.multiset, data.unlabeled_nodes, data.prior);
  } else {
    config.lambda = 0.0;
  }
  model.attribute_ = lr_train_label_reg(attr_train, data.train_labels, train_beta, unlabeled_attr,
                                        unlabeled_beta, config, spec.sigma_sq, spec.optimizer);
  return model;
}

}  // namespace sslcc
