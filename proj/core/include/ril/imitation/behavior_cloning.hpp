#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ril/expert/demoset.hpp"
#include "ril/policy/gaussian_policy.hpp"

namespace ril {

struct IlConfig {
  double learning_rate = 1e-3;
  double momentum = 0.9;
  int minibatch = 64;
  int iterations = 50000;
  double dropout_rate = 0.5;
  double validation_fraction = 0.1;
  /// Loss curve sampling period in iterations.
  int eval_interval = 1000;
  std::uint64_t seed = 0;
};

struct IlCurvePoint {
  int iteration = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;  ///< NaN when there is no validation split
};

struct IlReport {
  std::vector<IlCurvePoint> curve;
  std::size_t train_samples = 0;
  std::size_t validation_samples = 0;
};

struct IlResult {
  GaussianPolicy policy;
  IlReport report;
};

/// Flattened (observation, expert command) pairs.
struct DemoMatrix {
  Eigen::MatrixXd observations;  ///< 38 x N
  Eigen::Matrix2Xd commands;     ///< 2 x N, command space
};

DemoMatrix flatten_demos(const DemoSet& demos);

/// Mean squared error between policy means and expert commands, both mapped
/// to the normalized [-1, 1] output space, averaged over samples and the two
/// command dimensions. `dropout_mask` selects train-IL mode.
double bc_loss(const GaussianPolicy& policy, const Eigen::MatrixXd& obs, const Eigen::Matrix2Xd& commands,
               const Eigen::MatrixXd* dropout_mask = nullptr);

ValueAndGradient bc_loss_gradient(const GaussianPolicy& policy, const Eigen::MatrixXd& obs,
                                  const Eigen::Matrix2Xd& commands, const Eigen::MatrixXd* dropout_mask = nullptr);

/// Behavior cloning by minibatch SGD with momentum on the network weights;
/// the log-std is never touched. Throws NumericalError on divergence.
IlResult train_il(const DemoSet& demos, const GaussianPolicy& initial, const IlConfig& config);

}  // namespace ril
