#include "sslcc/logistic.hpp"

#include <cmath>
#include <string>

#include "sslcc/errors.hpp"
#include "sslcc/label_regularization.hpp"

namespace sslcc {

LRModel::LRModel(Eigen::MatrixXd theta, double sigma_sq)
    : theta_(std::move(theta)), sigma_sq_(sigma_sq) {
  if (theta_.rows() < 2 || theta_.cols() < 1) throw UsageError("LR model needs >= 2 classes");
  if (!(sigma_sq_ > 0.0)) throw ConfigError("sigma_sq must be positive");
}

LRModel LRModel::zeros(std::size_t class_count, std::size_t feature_dim, double sigma_sq) {
  return LRModel(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(class_count),
                                       static_cast<Eigen::Index>(feature_dim + 1)),
                 sigma_sq);
}

Eigen::VectorXd LRModel::scores(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != feature_dim()) {
    throw UsageError("feature vector has length " + std::to_string(x.size()) + ", model expects " +
                     std::to_string(feature_dim()));
  }
  const Eigen::Index d = x.size();
  return theta_.leftCols(d) * x + theta_.col(d);
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores) {
  Eigen::MatrixXd out = scores;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double m = out.row(i).maxCoeff();
    out.row(i) = (out.row(i).array() - m).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Distribution lr_predict_proba(const LRModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::VectorXd s = model.scores(x);
  return softmax_rows(s.transpose()).transpose();
}

Eigen::MatrixXd with_bias_column(const Eigen::MatrixXd& features) {
  Eigen::MatrixXd out(features.rows(), features.cols() + 1);
  out.leftCols(features.cols()) = features;
  out.col(features.cols()).setOnes();
  return out;
}

Eigen::MatrixXd lr_predict_proba_rows(const LRModel& model, const Eigen::MatrixXd& features) {
  if (static_cast<std::size_t>(features.cols()) != model.feature_dim()) {
    throw UsageError("feature matrix width does not match model");
  }
  return softmax_rows(with_bias_column(features) * model.theta().transpose());
}

void validate_training_inputs(const Eigen::MatrixXd& features, std::span<const ClassId> labels,
                              std::size_t class_count, double sigma_sq) {
  if (features.rows() == 0) throw UsageError("training set is empty");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw UsageError("feature rows and labels differ in length");
  }
  if (class_count < 2) throw UsageError("need at least two classes");
  if (!(sigma_sq > 0.0)) throw ConfigError("sigma_sq must be positive");
  if (!features.allFinite()) throw InputError("non-finite feature value in training data");
  for (ClassId y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= class_count) {
      throw UsageError("training label out of range");
    }
  }
}

LogisticObjective::LogisticObjective(LogisticObjectiveData data) : data_(std::move(data)) {
  const auto c = static_cast<Eigen::Index>(data_.class_count);
  labeled_aug_ = with_bias_column(data_.labeled);
  if (data_.labeled_beta.size() > 0) {
    if (data_.labeled_beta.rows() != data_.labeled.rows() || data_.labeled_beta.cols() != c) {
      throw UsageError("labeled beta matrix has wrong shape");
    }
    if ((data_.labeled_beta.array() <= 0.0).any()) throw UsageError("beta must be strictly positive");
    labeled_log_beta_ = data_.labeled_beta.array().log().matrix();
  }
  if (data_.lambda > 0.0 && data_.unlabeled.rows() > 0) {
    if (data_.unlabeled.cols() != data_.labeled.cols()) {
      throw UsageError("unlabeled features have wrong width");
    }
    if (data_.target.size() != c) throw UsageError("target distribution has wrong length");
    unlabeled_aug_ = with_bias_column(data_.unlabeled);
    if (data_.unlabeled_beta.size() > 0) {
      if (data_.unlabeled_beta.rows() != data_.unlabeled.rows() || data_.unlabeled_beta.cols() != c) {
        throw UsageError("unlabeled beta matrix has wrong shape");
      }
      if ((data_.unlabeled_beta.array() <= 0.0).any()) {
        throw UsageError("beta must be strictly positive");
      }
      unlabeled_log_beta_ = data_.unlabeled_beta.array().log().matrix();
    }
  }
}

ObjectiveValue LogisticObjective::operator()(const Eigen::MatrixXd& theta) const {
  const Eigen::Index d = labeled_aug_.cols() - 1;
  ObjectiveValue out;

  // Likelihood: grad = (onehot - P)^T [X 1].
  Eigen::MatrixXd scores = labeled_aug_ * theta.transpose();
  if (labeled_log_beta_.size() > 0) scores += labeled_log_beta_;
  Eigen::MatrixXd residual = -softmax_rows(scores);
  double loglik = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double m = scores.row(i).maxCoeff();
    const double lse = m + std::log((scores.row(i).array() - m).exp().sum());
    const ClassId y = data_.labels[static_cast<std::size_t>(i)];
    loglik += scores(i, y) - lse;
    residual(i, y) += 1.0;
  }
  out.gradient = residual.transpose() * labeled_aug_;

  // Gaussian prior, bias column excluded.
  const auto weights = theta.leftCols(d);
  out.value = loglik - weights.squaredNorm() / (2.0 * data_.sigma_sq);
  out.gradient.leftCols(d) -= weights / data_.sigma_sq;

  if (unlabeled_aug_.rows() > 0) {
    Eigen::MatrixXd u_scores = unlabeled_aug_ * theta.transpose();
    if (unlabeled_log_beta_.size() > 0) u_scores += unlabeled_log_beta_;
    const Eigen::MatrixXd posteriors = softmax_rows(u_scores);
    const Distribution empirical = posteriors.colwise().mean().transpose();
    out.value -= data_.lambda * kl_penalty(data_.target, empirical, data_.epsilon_floor);
    out.gradient -= data_.lambda * label_reg_gradient_from_posteriors(posteriors, unlabeled_aug_,
                                                                      data_.target,
                                                                      data_.epsilon_floor);
  }
  return out;
}

LRModel lr_train(const Eigen::MatrixXd& features, std::span<const ClassId> labels,
                 std::size_t class_count, double sigma_sq, const OptimizerOptions& options) {
  validate_training_inputs(features, labels, class_count, sigma_sq);
  LogisticObjectiveData data;
  data.labeled = features;
  data.labels.assign(labels.begin(), labels.end());
  data.sigma_sq = sigma_sq;
  data.class_count = class_count;
  const LogisticObjective objective(std::move(data));

  TrainingReport report;
  Eigen::MatrixXd theta = maximize(
      objective, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(class_count), features.cols() + 1),
      options, report);
  LRModel model(std::move(theta), sigma_sq);
  model.report = report;
  return model;
}

}  // namespace sslcc
