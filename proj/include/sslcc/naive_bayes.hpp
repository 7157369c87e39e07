#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"

namespace sslcc {

/// Naive Bayes over count vectors ("multiset" features). For relational
/// use the count dimension equals |C| and entry c counts neighbors labeled
/// c; the model itself works for any count dimension.
struct NBRelationalModel {
  Distribution class_prior;       // |C|
  Eigen::MatrixXd neighbor_table; // |C| x V, rows are distributions
  double alpha = 1.0;
  /// Classes with no training rows; their table rows are uniform.
  std::vector<ClassId> empty_classes;
};

/// table(y, c) = (sum_{i: y_i = y} counts(i, c) + alpha) / (sum_{i: y_i = y} |counts_i| + V alpha)
/// prior(y)    = (n_y + alpha) / (N + |C| alpha)
NBRelationalModel nb_relational_train(const MultisetFeatures& counts,
                                      std::span<const ClassId> labels, std::size_t class_count,
                                      double alpha);

/// normalize_y( prior(y) * prod_c table(y, c)^counts(c) ), in log space.
Distribution nb_relational_predict(const NBRelationalModel& model,
                                   const Eigen::Ref<const Eigen::VectorXi>& counts);

}  // namespace sslcc
