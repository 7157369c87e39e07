#include "sslcc/label_regularization.hpp"

#include <algorithm>
#include <cmath>

#include "sslcc/errors.hpp"

namespace sslcc {

Eigen::MatrixXd weighted_posteriors(const LRModel& model, const Eigen::MatrixXd& features,
                                    const Eigen::MatrixXd& beta) {
  if (static_cast<std::size_t>(features.cols()) != model.feature_dim()) {
    throw UsageError("feature matrix width does not match model");
  }
  Eigen::MatrixXd scores = with_bias_column(features) * model.theta().transpose();
  if (beta.size() > 0) {
    if (beta.rows() != features.rows() || beta.cols() != scores.cols()) {
      throw UsageError("beta matrix has wrong shape");
    }
    if ((beta.array() <= 0.0).any()) throw UsageError("beta must be strictly positive");
    scores += beta.array().log().matrix();
  }
  return softmax_rows(scores);
}

Distribution empirical_label_distribution(const LRModel& model,
                                          const Eigen::MatrixXd& unlabeled_features,
                                          const Eigen::MatrixXd& beta) {
  if (unlabeled_features.rows() == 0) {
    throw ConfigError("empirical label distribution needs at least one unlabeled node");
  }
  return weighted_posteriors(model, unlabeled_features, beta).colwise().mean().transpose();
}

double kl_penalty(const Distribution& target, const Distribution& empirical, double epsilon_floor) {
  if (target.size() != empirical.size()) throw UsageError("distribution lengths differ");
  double total = 0.0;
  for (Eigen::Index y = 0; y < target.size(); ++y) {
    if (target(y) <= 0.0) continue;
    total += target(y) * std::log(target(y) / std::max(empirical(y), epsilon_floor));
  }
  return std::max(total, 0.0);
}

Eigen::MatrixXd label_reg_gradient_from_posteriors(const Eigen::MatrixXd& posteriors,
                                                   const Eigen::MatrixXd& augmented_features,
                                                   const Distribution& target,
                                                   double epsilon_floor) {
  const auto n = static_cast<double>(posteriors.rows());
  const Distribution empirical = posteriors.colwise().mean().transpose();
  const Eigen::RowVectorXd ratio =
      (target.array() / empirical.array().max(epsilon_floor)).matrix().transpose();
  // weights(x, y) = p(y|x) * (sum_y' r(y') p(y'|x) - r(y)) / |X^U|
  const Eigen::VectorXd mixed = posteriors * ratio.transpose();
  Eigen::MatrixXd weights = posteriors;
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    weights.row(i).array() *= (mixed(i) - ratio.array());
  }
  weights /= n;
  return weights.transpose() * augmented_features;
}

Eigen::MatrixXd label_reg_gradient(const LRModel& model, const Eigen::MatrixXd& unlabeled_features,
                                   const Eigen::MatrixXd& beta, const Distribution& target,
                                   double epsilon_floor) {
  if (unlabeled_features.rows() == 0) {
    throw ConfigError("label regularization gradient needs unlabeled nodes");
  }
  if (static_cast<std::size_t>(target.size()) != model.class_count()) {
    throw UsageError("target distribution has wrong length");
  }
  const Eigen::MatrixXd posteriors = weighted_posteriors(model, unlabeled_features, beta);
  return label_reg_gradient_from_posteriors(posteriors, with_bias_column(unlabeled_features), target,
                                            epsilon_floor);
}

LRModel lr_train_label_reg(const Eigen::MatrixXd& known_features,
                           std::span<const ClassId> known_labels,
                           const Eigen::MatrixXd& known_beta,
                           const Eigen::MatrixXd& unlabeled_features,
                           const Eigen::MatrixXd& unlabeled_beta, const LabelRegConfig& config,
                           double sigma_sq, const OptimizerOptions& options) {
  const auto class_count = static_cast<std::size_t>(config.target_dist.size());
  validate_training_inputs(known_features, known_labels, class_count, sigma_sq);
  if (config.lambda < 0.0) throw ConfigError("lambda must be non-negative");
  if ((config.target_dist.array() <= 0.0).any() ||
      std::abs(config.target_dist.sum() - 1.0) > 1e-9) {
    throw ConfigError("label regularization target must be a strictly positive distribution");
  }
  if (!unlabeled_features.allFinite()) throw InputError("non-finite unlabeled feature value");

  LogisticObjectiveData data;
  data.labeled = known_features;
  data.labels.assign(known_labels.begin(), known_labels.end());
  if (config.beta_weighted_likelihood) data.labeled_beta = known_beta;
  data.unlabeled = unlabeled_features;
  data.unlabeled_beta = unlabeled_beta;
  data.target = config.target_dist;
  data.lambda = config.lambda;
  data.epsilon_floor = config.epsilon_floor;
  data.sigma_sq = sigma_sq;
  data.class_count = class_count;
  const LogisticObjective objective(std::move(data));

  TrainingReport report;
  Eigen::MatrixXd theta =
      maximize(objective,
               Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(class_count),
                                     known_features.cols() + 1),
               options, report);
  LRModel model(std::move(theta), sigma_sq);
  model.report = report;
  return model;
}

}  // namespace sslcc
