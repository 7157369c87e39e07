#include "sslcc/naive_bayes.hpp"

#include <cmath>

#include "sslcc/errors.hpp"
#include "sslcc/logistic.hpp"

namespace sslcc {

NBRelationalModel nb_relational_train(const MultisetFeatures& counts,
                                      std::span<const ClassId> labels, std::size_t class_count,
                                      double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("Dirichlet alpha must be positive");
  if (counts.rows() == 0) throw UsageError("NB training set is empty");
  if (static_cast<std::size_t>(counts.rows()) != labels.size()) {
    throw UsageError("count rows and labels differ in length");
  }
  if ((counts.array() < 0).any()) throw UsageError("counts must be non-negative");

  const auto c = static_cast<Eigen::Index>(class_count);
  const Eigen::Index v = counts.cols();
  Eigen::MatrixXd totals = Eigen::MatrixXd::Zero(c, v);
  Eigen::VectorXd class_counts = Eigen::VectorXd::Zero(c);
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    const ClassId y = labels[static_cast<std::size_t>(i)];
    if (y < 0 || y >= c) throw UsageError("training label out of range");
    totals.row(y) += counts.row(i).cast<double>();
    class_counts(y) += 1.0;
  }

  NBRelationalModel model;
  model.alpha = alpha;
  model.neighbor_table.resize(c, v);
  for (Eigen::Index y = 0; y < c; ++y) {
    if (class_counts(y) == 0.0) model.empty_classes.push_back(static_cast<ClassId>(y));
    const double denom = totals.row(y).sum() + static_cast<double>(v) * alpha;
    model.neighbor_table.row(y) = (totals.row(y).array() + alpha) / denom;
  }
  model.class_prior = (class_counts.array() + alpha) /
                      (static_cast<double>(counts.rows()) + static_cast<double>(c) * alpha);
  return model;
}

Distribution nb_relational_predict(const NBRelationalModel& model,
                                   const Eigen::Ref<const Eigen::VectorXi>& counts) {
  if (counts.size() != model.neighbor_table.cols()) {
    throw UsageError("count vector length does not match NB model");
  }
  if ((counts.array() < 0).any()) throw UsageError("counts must be non-negative");
  if ((counts.array() == 0).all()) return model.class_prior;
  Eigen::RowVectorXd log_post = model.class_prior.array().log().matrix().transpose();
  for (Eigen::Index k = 0; k < counts.size(); ++k) {
    if (counts(k) == 0) continue;
    log_post += static_cast<double>(counts(k)) *
                model.neighbor_table.col(k).array().log().matrix().transpose();
  }
  return softmax_rows(log_post).transpose();
}

}  // namespace sslcc
