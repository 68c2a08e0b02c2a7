#pragma once

#include <array>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "ril/common/random.hpp"
#include "ril/observation.hpp"
#include "ril/policy/mlp.hpp"
#include "ril/world/kinematics.hpp"

namespace ril {

struct PolicyShape {
  int hidden1 = 128;
  int hidden2 = 128;
  friend bool operator==(const PolicyShape&, const PolicyShape&) = default;
};

enum class PolicyMode { Eval, TrainIL };

/// Diagonal Gaussian over commands (v, omega), before clamping.
struct ActionDistribution {
  std::array<double, 2> mean{};
  std::array<double, 2> std{};
};

/// Gradient of a scalar functional w.r.t. the batch of command-space means
/// (2 x N) and the state-independent log standard deviation.
struct OutputGradient {
  Eigen::Matrix2Xd mean;
  Eigen::Vector2d log_std = Eigen::Vector2d::Zero();
};

/// Scalar functional of the policy outputs over a batch. Must fill `grad`
/// (already sized and zeroed) and return the functional value.
using OutputFunctional =
    std::function<double(const Eigen::Matrix2Xd& mean, const Eigen::Vector2d& log_std, OutputGradient& grad)>;

struct ValueAndGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// Stochastic navigation policy: a 38 -> h1 -> h2 -> 2 tanh network whose
/// de-normalized output is the mean of a Gaussian over (v, omega), plus a
/// learnable state-independent log-std.
///
/// Flat parameters: network parameters (see Mlp) followed by the two log-std
/// values.
class GaussianPolicy {
 public:
  GaussianPolicy() : GaussianPolicy(PolicyShape{}, CommandLimits{}) {}
  GaussianPolicy(const PolicyShape& shape, const CommandLimits& limits, double dropout_rate = 0.5);

  /// Glorot weights, zero biases, log_std = log(0.25 * command half-range).
  void initialize(Rng& rng);

  const PolicyShape& shape() const { return shape_; }
  const CommandLimits& limits() const { return limits_; }
  double dropout_rate() const { return dropout_rate_; }
  void set_dropout_rate(double rate) { dropout_rate_ = rate; }

  const Mlp& network() const { return net_; }
  Mlp& network() { return net_; }
  const Eigen::Vector2d& log_std() const { return log_std_; }
  void set_log_std(const Eigen::Vector2d& log_std) { log_std_ = log_std; }

  Eigen::Index parameter_count() const { return net_.parameter_count() + 2; }
  Eigen::VectorXd flat_params() const;
  void set_flat_params(const Eigen::Ref<const Eigen::VectorXd>& params);

  /// Single observation. TrainIL mode draws a dropout mask from `rng`
  /// (required in that mode). Throws NumericalError on non-finite output.
  ActionDistribution forward(const Observation& obs, PolicyMode mode = PolicyMode::Eval, Rng* rng = nullptr) const;

  /// Command-space means for a 38 x N batch.
  Eigen::Matrix2Xd mean_batch(const Eigen::MatrixXd& obs, Mlp::Tape* tape = nullptr,
                              const Eigen::MatrixXd* dropout_mask = nullptr) const;

  /// Inverted-dropout mask for a batch of n samples (entries 0 or 1/(1-p)).
  Eigen::MatrixXd sample_dropout_mask(Eigen::Index n, Rng& rng) const;

  /// Exact reverse-mode gradient of `functional` w.r.t. the flat parameters.
  /// Throws NumericalError on a non-finite value or gradient.
  ValueAndGradient grad_scalar(const Eigen::MatrixXd& obs, const OutputFunctional& functional,
                               const Eigen::MatrixXd* dropout_mask = nullptr) const;

  /// (F + damping I) v, with F the Gauss-Newton Fisher of the batch-mean KL:
  /// F = mean_i J_i^T M J_i, M = diag(1/sigma^2) on the means and 2 on the
  /// log-stds. One forward-mode and one reverse-mode pass; F is never formed.
  Eigen::VectorXd fisher_vector_product(const Eigen::MatrixXd& obs, const Eigen::VectorXd& v, double damping) const;

  /// Same product reusing a tape recorded by mean_batch() on `obs`.
  Eigen::VectorXd fisher_vector_product(const Mlp::Tape& tape, const Eigen::VectorXd& v, double damping) const;

  /// Per-dimension scale / offset of the affine map from network output to
  /// command space.
  Eigen::Vector2d output_scale() const { return {0.5 * limits_.v_max, limits_.omega_max}; }
  Eigen::Vector2d output_offset() const { return {0.5 * limits_.v_max, 0.0}; }

 private:
  PolicyShape shape_;
  CommandLimits limits_;
  double dropout_rate_ = 0.5;
  Mlp net_;
  Eigen::Vector2d log_std_ = Eigen::Vector2d::Zero();
};

/// Diagonal Gaussian log density of `action`.
double log_prob(const ActionDistribution& dist, const std::array<double, 2>& action);

/// Samples an action (pre-clamp) from the distribution.
std::array<double, 2> sample_action(const ActionDistribution& dist, Rng& rng);

/// Closed-form KL(old || new) between diagonal Gaussians.
double gaussian_kl(const ActionDistribution& old_dist, const ActionDistribution& new_dist);

/// Batch-mean of KL(old || new) over a 38 x N observation batch (eval mode).
double kl_mean(const GaussianPolicy& old_policy, const GaussianPolicy& new_policy, const Eigen::MatrixXd& obs);

/// Stacks observations into a 38 x N matrix.
Eigen::MatrixXd to_matrix(std::span<const Observation> observations);

}  // namespace ril
