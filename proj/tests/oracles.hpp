#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"

namespace sslcc::oracle {

/// Central finite differences of a scalar function of a matrix.
inline Eigen::MatrixXd finite_difference(const std::function<double(const Eigen::MatrixXd&)>& f,
                                         const Eigen::MatrixXd& at, double h = 1e-5) {
  Eigen::MatrixXd grad(at.rows(), at.cols());
  Eigen::MatrixXd probe = at;
  for (Eigen::Index i = 0; i < at.rows(); ++i) {
    for (Eigen::Index j = 0; j < at.cols(); ++j) {
      probe(i, j) = at(i, j) + h;
      const double up = f(probe);
      probe(i, j) = at(i, j) - h;
      const double down = f(probe);
      probe(i, j) = at(i, j);
      grad(i, j) = (up - down) / (2.0 * h);
    }
  }
  return grad;
}

inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-12});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

/// KL(target || mean_u softmax(log beta_u + theta . [x_u, 1])), written out
/// with plain loops.
inline double kl_of_theta(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& x,
                          const Eigen::MatrixXd& beta, const Eigen::VectorXd& target) {
  const Eigen::Index classes = theta.rows();
  const Eigen::Index d = x.cols();
  std::vector<double> mean(static_cast<std::size_t>(classes), 0.0);
  for (Eigen::Index u = 0; u < x.rows(); ++u) {
    std::vector<double> w(static_cast<std::size_t>(classes));
    double z = 0.0;
    for (Eigen::Index y = 0; y < classes; ++y) {
      double s = theta(y, d);
      for (Eigen::Index k = 0; k < d; ++k) s += theta(y, k) * x(u, k);
      w[static_cast<std::size_t>(y)] = beta(u, y) * std::exp(s);
      z += w[static_cast<std::size_t>(y)];
    }
    for (Eigen::Index y = 0; y < classes; ++y)
      mean[static_cast<std::size_t>(y)] += w[static_cast<std::size_t>(y)] / z / static_cast<double>(x.rows());
  }
  double kl = 0.0;
  for (Eigen::Index y = 0; y < classes; ++y)
    kl += target(y) * std::log(target(y) / mean[static_cast<std::size_t>(y)]);
  return kl;
}

/// Naive Bayes over two count groups, each group its own multinomial,
/// estimated by direct counting: p(y) prod_k tA(y,k)^a_k prod_k tR(y,k)^r_k.
class JointNaiveBayes {
 public:
  JointNaiveBayes(const Eigen::MatrixXi& a, const Eigen::MatrixXi& r, const std::vector<int>& labels,
                  int classes, double alpha)
      : log_prior_(classes), log_a_(classes, a.cols()), log_r_(classes, r.cols()) {
    const double n = static_cast<double>(labels.size());
    for (int y = 0; y < classes; ++y) {
      double ny = 0.0;
      std::vector<double> ca(static_cast<std::size_t>(a.cols()), 0.0);
      std::vector<double> cr(static_cast<std::size_t>(r.cols()), 0.0);
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != y) continue;
        ny += 1.0;
        for (Eigen::Index k = 0; k < a.cols(); ++k)
          ca[static_cast<std::size_t>(k)] += a(static_cast<Eigen::Index>(i), k);
        for (Eigen::Index k = 0; k < r.cols(); ++k)
          cr[static_cast<std::size_t>(k)] += r(static_cast<Eigen::Index>(i), k);
      }
      log_prior_(y) = std::log((ny + alpha) / (n + classes * alpha));
      double ta = 0.0, tr = 0.0;
      for (double v : ca) ta += v;
      for (double v : cr) tr += v;
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        log_a_(y, k) = std::log((ca[static_cast<std::size_t>(k)] + alpha) /
                                (ta + static_cast<double>(a.cols()) * alpha));
      for (Eigen::Index k = 0; k < r.cols(); ++k)
        log_r_(y, k) = std::log((cr[static_cast<std::size_t>(k)] + alpha) /
                                (tr + static_cast<double>(r.cols()) * alpha));
    }
  }

  Eigen::VectorXd posterior(const Eigen::VectorXi& a, const Eigen::VectorXi& r) const {
    Eigen::VectorXd lp = log_prior_;
    for (Eigen::Index y = 0; y < lp.size(); ++y) {
      for (Eigen::Index k = 0; k < a.size(); ++k) lp(y) += a(k) * log_a_(y, k);
      for (Eigen::Index k = 0; k < r.size(); ++k) lp(y) += r(k) * log_r_(y, k);
    }
    const double m = lp.maxCoeff();
    Eigen::VectorXd p = (lp.array() - m).exp();
    return p / p.sum();
  }

 private:
  Eigen::VectorXd log_prior_;
  Eigen::MatrixXd log_a_;
  Eigen::MatrixXd log_r_;
};

/// Conditionally independent count data: per class, each group draws
/// 1..6 tokens from a class-specific multinomial.
struct CountData {
  Eigen::MatrixXi a;
  Eigen::MatrixXi r;
  std::vector<int> labels;
};

inline CountData generate_count_data(int n, int classes, int va, int vr, std::mt19937_64& rng) {
  auto random_rows = [&](int v) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<std::discrete_distribution<int>> rows;
    for (int y = 0; y < classes; ++y) {
      std::vector<double> w(static_cast<std::size_t>(v));
      for (double& x : w) x = u(rng);
      rows.emplace_back(w.begin(), w.end());
    }
    return rows;
  };
  auto dist_a = random_rows(va);
  auto dist_r = random_rows(vr);
  std::uniform_int_distribution<int> cls(0, classes - 1);
  std::uniform_int_distribution<int> len(1, 6);
  CountData out{Eigen::MatrixXi::Zero(n, va), Eigen::MatrixXi::Zero(n, vr), {}};
  for (int i = 0; i < n; ++i) {
    const int y = cls(rng);
    out.labels.push_back(y);
    for (int t = len(rng); t > 0; --t) out.a(i, dist_a[static_cast<std::size_t>(y)](rng)) += 1;
    for (int t = len(rng); t > 0; --t) out.r(i, dist_r[static_cast<std::size_t>(y)](rng)) += 1;
  }
  return out;
}

/// Clamped-averaging fixed point: every unknown u satisfies
/// deg(u) f_u = sum of neighbor f, known nodes fixed to one-hot rows.
inline Eigen::MatrixXd harmonic_solution(const DataGraph& graph, const KnownLabels& known) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const auto c = static_cast<Eigen::Index>(graph.class_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto node = static_cast<NodeId>(i);
    if (known.contains(node)) {
      a(i, i) = 1.0;
      for (const auto& e : known.entries())
        if (e.node == node) b(i, e.label) = 1.0;
      continue;
    }
    a(i, i) = static_cast<double>(graph.degree(node));
    for (NodeId j : graph.neighbors(node)) a(i, static_cast<Eigen::Index>(j)) -= 1.0;
  }
  return a.fullPivLu().solve(b);
}

}  // namespace sslcc::oracle
