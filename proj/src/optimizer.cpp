#include "sslcc/optimizer.hpp"

#include <cmath>

namespace sslcc {

namespace {
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-16;
}  // namespace

Eigen::MatrixXd maximize(const Objective& objective, Eigen::MatrixXd start,
                         const OptimizerOptions& options, TrainingReport& report) {
  Eigen::MatrixXd theta = std::move(start);
  ObjectiveValue current = objective(theta);
  double step = options.initial_step;
  report = TrainingReport{};

  for (int it = 0; it < options.max_iterations; ++it) {
    report.iterations = it + 1;
    const double grad_sq = current.gradient.squaredNorm();
    if (grad_sq == 0.0 || !std::isfinite(grad_sq)) {
      report.converged = grad_sq == 0.0;
      break;
    }

    bool accepted = false;
    Eigen::MatrixXd candidate;
    ObjectiveValue next;
    while (step >= kMinStep) {
      candidate = theta + step * current.gradient;
      next = objective(candidate);
      if (std::isfinite(next.value) && next.value >= current.value + kArmijo * step * grad_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No ascent direction left at machine precision.
      report.converged = true;
      break;
    }

    const double improvement = next.value - current.value;
    theta = std::move(candidate);
    current = std::move(next);
    step *= 2.0;
    if (improvement < options.tolerance) {
      report.converged = true;
      break;
    }
  }
  report.objective = current.value;
  return theta;
}

}  // namespace sslcc
