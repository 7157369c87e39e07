#pragma once

#include <functional>

#include <Eigen/Dense>

namespace sslcc {

struct OptimizerOptions {
  int max_iterations = 500;
  /// Stop once one accepted step improves the objective by less than this.
  double tolerance = 1e-7;
  double initial_step = 1.0;
};

struct TrainingReport {
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
};

/// Objective value and its gradient with respect to the parameter matrix.
struct ObjectiveValue {
  double value = 0.0;
  Eigen::MatrixXd gradient;
};

using Objective = std::function<ObjectiveValue(const Eigen::MatrixXd&)>;

/// Full-batch gradient ascent with backtracking (Armijo) line search. The
/// step length doubles after every accepted step and halves on every
/// rejected trial, so the whole run is deterministic. Returns the best
/// iterate seen even when the iteration cap is hit.
Eigen::MatrixXd maximize(const Objective& objective, Eigen::MatrixXd start,
                         const OptimizerOptions& options, TrainingReport& report);

}  // namespace sslcc
