#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"
#include "sslcc/logistic.hpp"

namespace sslcc {

/// Label regularization settings for one training run.
struct LabelRegConfig {
  Distribution target_dist;      // p~(y), strictly positive
  double lambda = 0.0;           // conventionally 10 * |V^K|
  double epsilon_floor = 1e-10;  // floor on p^(y) before division
  /// When false, the labeled-node likelihood uses the plain softmax instead
  /// of the beta-weighted posterior.
  bool beta_weighted_likelihood = true;
};

/// beta-weighted posteriors p(y|x) = beta_y exp(x.theta_y) / Z for every row.
/// An empty beta matrix means beta = 1.
Eigen::MatrixXd weighted_posteriors(const LRModel& model, const Eigen::MatrixXd& features,
                                    const Eigen::MatrixXd& beta);

/// p^(y) = mean over unlabeled rows of the beta-weighted posterior.
Distribution empirical_label_distribution(const LRModel& model,
                                          const Eigen::MatrixXd& unlabeled_features,
                                          const Eigen::MatrixXd& beta);

/// KL(target || empirical), natural log, empirical floored at epsilon_floor.
double kl_penalty(const Distribution& target, const Distribution& empirical,
                  double epsilon_floor = 1e-10);

/// Gradient of kl_penalty with respect to theta (|C| x (d+1)). For each
/// unlabeled x and class y it accumulates
///
///   x_k p(y|x) / |X^U| * ( sum_y' r(y') p(y'|x) - r(y) ),  r = p~ / p^
///
/// with p^ recomputed from the current theta.
Eigen::MatrixXd label_reg_gradient(const LRModel& model, const Eigen::MatrixXd& unlabeled_features,
                                   const Eigen::MatrixXd& beta, const Distribution& target,
                                   double epsilon_floor = 1e-10);

/// Same gradient from precomputed posteriors and bias-augmented features.
Eigen::MatrixXd label_reg_gradient_from_posteriors(const Eigen::MatrixXd& posteriors,
                                                   const Eigen::MatrixXd& augmented_features,
                                                   const Distribution& target,
                                                   double epsilon_floor);

/// Trains the attribute member of a hybrid classifier with beta frozen:
/// maximizes the (beta-weighted) labeled log-likelihood minus the Gaussian
/// prior minus lambda * KL(p~ || p^).
LRModel lr_train_label_reg(const Eigen::MatrixXd& known_features,
                           std::span<const ClassId> known_labels,
                           const Eigen::MatrixXd& known_beta,
                           const Eigen::MatrixXd& unlabeled_features,
                           const Eigen::MatrixXd& unlabeled_beta, const LabelRegConfig& config,
                           double sigma_sq, const OptimizerOptions& options = {});

}  // namespace sslcc
