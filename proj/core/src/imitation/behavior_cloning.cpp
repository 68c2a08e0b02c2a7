#include "ril/imitation/behavior_cloning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ril/common/error.hpp"

namespace ril {
namespace {

OutputFunctional mse_functional(const GaussianPolicy& policy, const Eigen::Matrix2Xd& commands) {
  const Eigen::Vector2d scale = policy.output_scale();
  return [&commands, scale](const Eigen::Matrix2Xd& mean, const Eigen::Vector2d&, OutputGradient& grad) {
    const double n = static_cast<double>(mean.cols());
    // Residual in normalized output space.
    const Eigen::Matrix2Xd residual = (mean - commands).array().colwise() / scale.array();
    grad.mean = (residual.array().colwise() / scale.array()) / n;
    return residual.squaredNorm() / (2.0 * n);
  };
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(idx[j]);
  return out;
}

}  // namespace

DemoMatrix flatten_demos(const DemoSet& demos) {
  const auto n = static_cast<Eigen::Index>(demos.step_count());
  DemoMatrix out{Eigen::MatrixXd(kObservationSize, n), Eigen::Matrix2Xd(2, n)};
  Eigen::Index j = 0;
  for (const auto& demo : demos.demos) {
    for (std::size_t t = 0; t < demo.commands.size(); ++t, ++j) {
      out.observations.col(j) = Eigen::Map<const Eigen::VectorXd>(demo.observations[t].values.data(), kObservationSize);
      out.commands.col(j) << demo.commands[t].v, demo.commands[t].omega;
    }
  }
  return out;
}

double bc_loss(const GaussianPolicy& policy, const Eigen::MatrixXd& obs, const Eigen::Matrix2Xd& commands,
               const Eigen::MatrixXd* dropout_mask) {
  const Eigen::Matrix2Xd mean = policy.mean_batch(obs, nullptr, dropout_mask);
  const Eigen::Matrix2Xd residual = (mean - commands).array().colwise() / policy.output_scale().array();
  return residual.squaredNorm() / (2.0 * static_cast<double>(obs.cols()));
}

ValueAndGradient bc_loss_gradient(const GaussianPolicy& policy, const Eigen::MatrixXd& obs,
                                  const Eigen::Matrix2Xd& commands, const Eigen::MatrixXd* dropout_mask) {
  return policy.grad_scalar(obs, mse_functional(policy, commands), dropout_mask);
}

IlResult train_il(const DemoSet& demos, const GaussianPolicy& initial, const IlConfig& config) {
  if (demos.demos.empty() || demos.step_count() == 0) throw ConfigError("behavior cloning needs demonstrations");
  if (config.iterations < 1) throw ConfigError("IL iteration count must be >= 1");
  if (config.validation_fraction < 0.0 || config.validation_fraction >= 1.0) {
    throw ConfigError("IL validation fraction must be in [0, 1)");
  }
  if (config.minibatch < 1) throw ConfigError("IL minibatch must be >= 1");

  const DemoMatrix data = flatten_demos(demos);
  const Eigen::Index n = data.observations.cols();
  Rng rng = make_rng(config.seed, {0x11});

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  auto n_val = static_cast<Eigen::Index>(std::floor(config.validation_fraction * static_cast<double>(n)));
  if (n_val >= n) n_val = n - 1;
  const std::vector<Eigen::Index> val_idx(order.begin(), order.begin() + n_val);
  const std::vector<Eigen::Index> train_idx(order.begin() + n_val, order.end());

  const Eigen::MatrixXd train_obs = select_columns(data.observations, train_idx);
  const Eigen::Matrix2Xd train_cmd = select_columns(data.commands, train_idx);
  const Eigen::MatrixXd val_obs = select_columns(data.observations, val_idx);
  const Eigen::Matrix2Xd val_cmd = select_columns(data.commands, val_idx);

  IlResult result{initial, {}};
  GaussianPolicy& policy = result.policy;
  policy.set_dropout_rate(config.dropout_rate);
  result.report.train_samples = train_idx.size();
  result.report.validation_samples = val_idx.size();

  const auto record = [&](int iteration) {
    IlCurvePoint p;
    p.iteration = iteration;
    p.train_loss = bc_loss(policy, train_obs, train_cmd);
    p.validation_loss = val_obs.cols() > 0 ? bc_loss(policy, val_obs, val_cmd) : std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(p.train_loss)) throw NumericalError("behavior cloning diverged at iteration " + std::to_string(iteration));
    result.report.curve.push_back(p);
  };

  const Eigen::Index n_net = policy.network().parameter_count();
  Eigen::VectorXd params = policy.network().flat();
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(n_net);
  const Eigen::Index batch = std::min<Eigen::Index>(config.minibatch, train_obs.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, train_obs.cols() - 1);
  std::vector<Eigen::Index> mb(static_cast<std::size_t>(batch));

  const int interval = std::max(1, config.eval_interval);
  record(0);
  for (int it = 1; it <= config.iterations; ++it) {
    for (auto& j : mb) j = pick(rng);
    const Eigen::MatrixXd obs = select_columns(train_obs, mb);
    const Eigen::Matrix2Xd cmd = select_columns(train_cmd, mb);
    Eigen::MatrixXd mask;
    const Eigen::MatrixXd* mask_ptr = nullptr;
    if (config.dropout_rate > 0.0) {
      mask = policy.sample_dropout_mask(batch, rng);
      mask_ptr = &mask;
    }
    const ValueAndGradient vg = bc_loss_gradient(policy, obs, cmd, mask_ptr);
    velocity = config.momentum * velocity - config.learning_rate * vg.gradient.head(n_net);
    params += velocity;
    policy.network().set_flat(params);
    if (it % interval == 0 || it == config.iterations) record(it);
  }
  return result;
}

}  // namespace ril
