#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ril/policy/gaussian_policy.hpp"
#include "ril/policy/mlp.hpp"

namespace ril {

/// State-value baseline: 38 -> h -> h -> 1, tanh hidden, linear output.
class ValueFunction {
 public:
  explicit ValueFunction(int hidden = 64);

  void initialize(Rng& rng);

  std::vector<double> predict(const Eigen::MatrixXd& obs) const;

  /// Mean squared error and its gradient w.r.t. the flat parameters.
  ValueAndGradient loss_gradient(const Eigen::MatrixXd& obs, std::span<const double> targets) const;

  /// Full-batch gradient descent on the mean squared error; returns the final loss.
  double fit(const Eigen::MatrixXd& obs, std::span<const double> targets, int steps, double learning_rate);

  Mlp& network() { return net_; }
  const Mlp& network() const { return net_; }

 private:
  Mlp net_;
};

/// Reward and cost baselines.
struct ValueNets {
  ValueFunction reward;
  ValueFunction cost;

  explicit ValueNets(int hidden = 64) : reward(hidden), cost(hidden) {}
  void initialize(Rng& rng) {
    reward.initialize(rng);
    cost.initialize(rng);
  }
};

}  // namespace ril
