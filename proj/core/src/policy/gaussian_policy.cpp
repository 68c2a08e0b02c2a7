#include "ril/policy/gaussian_policy.hpp"

#include <cmath>

#include "ril/common/error.hpp"

namespace ril {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string("non-finite ") + what);
}

}  // namespace

GaussianPolicy::GaussianPolicy(const PolicyShape& shape, const CommandLimits& limits, double dropout_rate)
    : shape_(shape),
      limits_(limits),
      dropout_rate_(dropout_rate),
      net_({kObservationSize, shape.hidden1, shape.hidden2, 2}, Activation::Tanh) {
  log_std_ = Eigen::Vector2d(std::log(0.25 * 0.5 * limits_.v_max), std::log(0.25 * limits_.omega_max));
}

void GaussianPolicy::initialize(Rng& rng) {
  net_.initialize(rng);
  log_std_ = Eigen::Vector2d(std::log(0.25 * 0.5 * limits_.v_max), std::log(0.25 * limits_.omega_max));
}

Eigen::VectorXd GaussianPolicy::flat_params() const {
  Eigen::VectorXd out(parameter_count());
  out.head(net_.parameter_count()) = net_.flat();
  out.tail(2) = log_std_;
  return out;
}

void GaussianPolicy::set_flat_params(const Eigen::Ref<const Eigen::VectorXd>& params) {
  if (params.size() != parameter_count()) throw std::invalid_argument("GaussianPolicy: flat size mismatch");
  net_.set_flat(params.head(net_.parameter_count()));
  log_std_ = params.tail(2);
}

Eigen::MatrixXd GaussianPolicy::sample_dropout_mask(Eigen::Index n, Rng& rng) const {
  Eigen::MatrixXd mask(shape_.hidden1, n);
  if (dropout_rate_ <= 0.0) {
    mask.setOnes();
    return mask;
  }
  std::bernoulli_distribution keep(1.0 - dropout_rate_);
  const double scale = dropout_rate_ < 1.0 ? 1.0 / (1.0 - dropout_rate_) : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < mask.rows(); ++i) mask(i, j) = keep(rng) ? scale : 0.0;
  }
  return mask;
}

Eigen::Matrix2Xd GaussianPolicy::mean_batch(const Eigen::MatrixXd& obs, Mlp::Tape* tape,
                                            const Eigen::MatrixXd* dropout_mask) const {
  Eigen::Matrix2Xd out = net_.forward(obs, tape, dropout_mask);
  out = (out.array().colwise() * output_scale().array()).colwise() + output_offset().array();
  return out;
}

ActionDistribution GaussianPolicy::forward(const Observation& obs, PolicyMode mode, Rng* rng) const {
  const Eigen::Map<const Eigen::VectorXd> x(obs.values.data(), kObservationSize);
  Eigen::MatrixXd mask;
  const Eigen::MatrixXd* mask_ptr = nullptr;
  if (mode == PolicyMode::TrainIL && dropout_rate_ > 0.0) {
    if (rng == nullptr) throw std::invalid_argument("GaussianPolicy::forward: TrainIL mode needs an rng");
    mask = sample_dropout_mask(1, *rng);
    mask_ptr = &mask;
  }
  const Eigen::Matrix2Xd mean = mean_batch(x, nullptr, mask_ptr);
  require_finite(mean, "policy output");
  ActionDistribution dist;
  dist.mean = {mean(0, 0), mean(1, 0)};
  dist.std = {std::exp(log_std_[0]), std::exp(log_std_[1])};
  return dist;
}

ValueAndGradient GaussianPolicy::grad_scalar(const Eigen::MatrixXd& obs, const OutputFunctional& functional,
                                             const Eigen::MatrixXd* dropout_mask) const {
  Mlp::Tape tape;
  const Eigen::Matrix2Xd mean = mean_batch(obs, &tape, dropout_mask);
  require_finite(mean, "policy output");

  OutputGradient og;
  og.mean = Eigen::Matrix2Xd::Zero(2, obs.cols());
  og.log_std.setZero();
  ValueAndGradient out;
  out.value = functional(mean, log_std_, og);

  // Chain through the affine de-normalization.
  const Eigen::MatrixXd net_grad = og.mean.array().colwise() * output_scale().array();
  out.gradient.resize(parameter_count());
  out.gradient.head(net_.parameter_count()) = net_.backward(tape, net_grad);
  out.gradient.tail(2) = og.log_std;
  if (!std::isfinite(out.value)) throw NumericalError("non-finite functional value");
  require_finite(out.gradient, "gradient");
  return out;
}

Eigen::VectorXd GaussianPolicy::fisher_vector_product(const Eigen::MatrixXd& obs, const Eigen::VectorXd& v,
                                                      double damping) const {
  Mlp::Tape tape;
  mean_batch(obs, &tape);
  return fisher_vector_product(tape, v, damping);
}

Eigen::VectorXd GaussianPolicy::fisher_vector_product(const Mlp::Tape& tape, const Eigen::VectorXd& v,
                                                      double damping) const {
  if (v.size() != parameter_count()) throw std::invalid_argument("fisher_vector_product: size mismatch");
  const Eigen::Index n_net = net_.parameter_count();
  const double n = static_cast<double>(tape.inputs.front().cols());
  const Eigen::Vector2d scale = output_scale();
  const Eigen::Vector2d inv_var = (-2.0 * log_std_).array().exp();

  // J v on the command-space means, then M, then J^T.
  const Eigen::MatrixXd dnet = net_.jvp(tape, v.head(n_net));
  const Eigen::Vector2d weight = scale.array().square() * inv_var.array() / n;
  const Eigen::MatrixXd weighted = dnet.array().colwise() * weight.array();

  Eigen::VectorXd out(v.size());
  out.head(n_net) = net_.backward(tape, weighted);
  out.tail(2) = 2.0 * v.tail(2);
  out += damping * v;
  require_finite(out, "Fisher-vector product");
  return out;
}

double log_prob(const ActionDistribution& dist, const std::array<double, 2>& action) {
  double lp = 0.0;
  for (int d = 0; d < 2; ++d) {
    const double z = (action[d] - dist.mean[d]) / dist.std[d];
    lp += -0.5 * z * z - std::log(dist.std[d]) - 0.5 * kLog2Pi;
  }
  return lp;
}

std::array<double, 2> sample_action(const ActionDistribution& dist, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 2> a{};
  for (int d = 0; d < 2; ++d) a[d] = dist.mean[d] + dist.std[d] * normal(rng);
  return a;
}

double gaussian_kl(const ActionDistribution& p, const ActionDistribution& q) {
  double kl = 0.0;
  for (int d = 0; d < 2; ++d) {
    const double diff = p.mean[d] - q.mean[d];
    kl += std::log(q.std[d] / p.std[d]) + (p.std[d] * p.std[d] + diff * diff) / (2.0 * q.std[d] * q.std[d]) - 0.5;
  }
  return kl;
}

double kl_mean(const GaussianPolicy& old_policy, const GaussianPolicy& new_policy, const Eigen::MatrixXd& obs) {
  const Eigen::Matrix2Xd mu_old = old_policy.mean_batch(obs);
  const Eigen::Matrix2Xd mu_new = new_policy.mean_batch(obs);
  const Eigen::Vector2d ls_old = old_policy.log_std();
  const Eigen::Vector2d ls_new = new_policy.log_std();
  const Eigen::Vector2d var_old = (2.0 * ls_old).array().exp();
  const Eigen::Vector2d var_new = (2.0 * ls_new).array().exp();

  double constant = 0.0;
  for (int d = 0; d < 2; ++d) constant += ls_new[d] - ls_old[d] + var_old[d] / (2.0 * var_new[d]) - 0.5;
  const Eigen::Vector2d inv_two_var_new = (2.0 * var_new).cwiseInverse();
  const double quad = ((mu_old - mu_new).array().square().colwise() * inv_two_var_new.array()).sum();
  const double n = static_cast<double>(obs.cols());
  const double kl = constant + quad / n;
  if (!std::isfinite(kl)) throw NumericalError("non-finite KL");
  return kl;
}

Eigen::MatrixXd to_matrix(std::span<const Observation> observations) {
  Eigen::MatrixXd m(kObservationSize, static_cast<Eigen::Index>(observations.size()));
  for (std::size_t j = 0; j < observations.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(observations[j].values.data(), kObservationSize);
  }
  return m;
}

}  // namespace ril
