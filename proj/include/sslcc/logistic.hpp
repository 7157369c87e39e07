#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"
#include "sslcc/optimizer.hpp"

namespace sslcc {

/// Multinomial logistic regression. theta is |C| x (d+1); the last column
/// is the bias, which behaves as a constant-1 feature and is excluded from
/// the Gaussian prior.
class LRModel {
 public:
  LRModel(Eigen::MatrixXd theta, double sigma_sq);
  static LRModel zeros(std::size_t class_count, std::size_t feature_dim, double sigma_sq = 1.0);

  const Eigen::MatrixXd& theta() const { return theta_; }
  double sigma_sq() const { return sigma_sq_; }
  std::size_t feature_dim() const { return static_cast<std::size_t>(theta_.cols() - 1); }
  std::size_t class_count() const { return static_cast<std::size_t>(theta_.rows()); }

  /// Linear scores theta_y . [x, 1].
  Eigen::VectorXd scores(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  TrainingReport report;

 private:
  Eigen::MatrixXd theta_;
  double sigma_sq_;
};

/// Softmax posterior p(y|x), log-sum-exp stabilized. Throws UsageError on a
/// dimension mismatch.
Distribution lr_predict_proba(const LRModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Posteriors for every row of `features` (N x |C|).
Eigen::MatrixXd lr_predict_proba_rows(const LRModel& model, const Eigen::MatrixXd& features);

/// MAP fit of plain multinomial LR under a N(0, sigma_sq) prior on the
/// non-bias weights, starting from theta = 0.
LRModel lr_train(const Eigen::MatrixXd& features, std::span<const ClassId> labels,
                 std::size_t class_count, double sigma_sq, const OptimizerOptions& options = {});

/// [X | 1]
Eigen::MatrixXd with_bias_column(const Eigen::MatrixXd& features);

/// Row-wise normalized exponentials of a score matrix.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores);

/// Terms of the penalized log-likelihood that the LR trainers maximize:
///
///   sum_i log p(y_i|x_i) - ||W||^2 / (2 sigma_sq) - lambda * KL(target || mean_u p(.|x_u))
///
/// where p(y|x) = beta_y exp(x.theta_y) / Z. Passing empty beta matrices
/// gives plain softmax; lambda = 0 or no unlabeled rows drops the KL term.
struct LogisticObjectiveData {
  Eigen::MatrixXd labeled;        // N_K x d
  std::vector<ClassId> labels;    // N_K
  Eigen::MatrixXd labeled_beta;   // N_K x |C| or empty
  Eigen::MatrixXd unlabeled;      // N_U x d or empty
  Eigen::MatrixXd unlabeled_beta; // N_U x |C| or empty
  Distribution target;            // |C|, used when lambda > 0
  double lambda = 0.0;
  double epsilon_floor = 1e-10;
  double sigma_sq = 1.0;
  std::size_t class_count = 0;
};

class LogisticObjective {
 public:
  explicit LogisticObjective(LogisticObjectiveData data);

  ObjectiveValue operator()(const Eigen::MatrixXd& theta) const;
  std::size_t class_count() const { return data_.class_count; }
  std::size_t feature_dim() const { return static_cast<std::size_t>(labeled_aug_.cols() - 1); }

 private:
  LogisticObjectiveData data_;
  Eigen::MatrixXd labeled_aug_;
  Eigen::MatrixXd unlabeled_aug_;
  Eigen::MatrixXd labeled_log_beta_;
  Eigen::MatrixXd unlabeled_log_beta_;
};

/// Checks finiteness and label ranges shared by every LR trainer.
void validate_training_inputs(const Eigen::MatrixXd& features, std::span<const ClassId> labels,
                              std::size_t class_count, double sigma_sq);

}  // namespace sslcc
