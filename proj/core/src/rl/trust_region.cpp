#include "ril/rl/trust_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ril/common/error.hpp"
#include "ril/rl/advantage.hpp"
#include "ril/rl/conjugate_gradient.hpp"

namespace ril {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kEps = 1e-8;

void fill_batch_stats(UpdateReport& report, const RolloutBatch& batch, const TrustRegionConfig& config) {
  const BatchSummary s = summarize(batch);
  report.mean_return = s.mean_return;
  report.success_rate = s.success_rate;
  report.crash_rate = s.crash_rate;
  report.jc = estimate_jc(batch, config.gamma_cost);
}

std::vector<double> scaled(const std::vector<double>& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

double surrogate_value(const GaussianPolicy& policy, const Eigen::MatrixXd& obs, const Eigen::Matrix2Xd& actions,
                       const std::vector<double>& old_log_probs, const std::vector<double>& weights) {
  const std::vector<double> lp = batch_log_probs(policy, obs, actions);
  double total = 0.0;
  for (std::size_t t = 0; t < lp.size(); ++t) total += weights[t] * std::exp(lp[t] - old_log_probs[t]);
  return total;
}

GaussianPolicy with_params(const GaussianPolicy& base, const Eigen::VectorXd& params) {
  GaussianPolicy p = base;
  p.set_flat_params(params);
  return p;
}

}  // namespace

std::vector<double> batch_log_probs(const GaussianPolicy& policy, const Eigen::MatrixXd& obs,
                                    const Eigen::Matrix2Xd& actions) {
  const Eigen::Matrix2Xd mean = policy.mean_batch(obs);
  const Eigen::Vector2d ls = policy.log_std();
  const Eigen::Vector2d inv_std = (-ls).array().exp();
  std::vector<double> out(static_cast<std::size_t>(obs.cols()));
  const double constant = -ls.sum() - kLog2Pi;
  for (Eigen::Index j = 0; j < obs.cols(); ++j) {
    const double z0 = (actions(0, j) - mean(0, j)) * inv_std[0];
    const double z1 = (actions(1, j) - mean(1, j)) * inv_std[1];
    out[static_cast<std::size_t>(j)] = -0.5 * (z0 * z0 + z1 * z1) + constant;
  }
  return out;
}

ValueAndGradient weighted_surrogate(const GaussianPolicy& policy, const Eigen::MatrixXd& obs,
                                    const Eigen::Matrix2Xd& actions, const std::vector<double>& old_log_probs,
                                    const std::vector<double>& weights) {
  const auto functional = [&](const Eigen::Matrix2Xd& mean, const Eigen::Vector2d& log_std, OutputGradient& grad) {
    const Eigen::Vector2d inv_var = (-2.0 * log_std).array().exp();
    const double constant = -log_std.sum() - kLog2Pi;
    double total = 0.0;
    for (Eigen::Index j = 0; j < mean.cols(); ++j) {
      const double d0 = actions(0, j) - mean(0, j);
      const double d1 = actions(1, j) - mean(1, j);
      const double lp = -0.5 * (d0 * d0 * inv_var[0] + d1 * d1 * inv_var[1]) + constant;
      const auto t = static_cast<std::size_t>(j);
      const double wr = weights[t] * std::exp(lp - old_log_probs[t]);
      total += wr;
      grad.mean(0, j) = wr * d0 * inv_var[0];
      grad.mean(1, j) = wr * d1 * inv_var[1];
      grad.log_std[0] += wr * (d0 * d0 * inv_var[0] - 1.0);
      grad.log_std[1] += wr * (d1 * d1 * inv_var[1] - 1.0);
    }
    return total;
  };
  return policy.grad_scalar(obs, functional);
}

CpoDual solve_cpo_dual(double q, double r_reward, double s, double c, double delta, bool b_negligible) {
  CpoDual out;
  // The closed form below is written for the loss gradient; r flips sign.
  const double r = -r_reward;
  if (b_negligible && c < 0.0) {
    out.optim_case = 4;
  } else {
    const double a_term = std::max(0.0, q - r * r / (s + kEps));
    const double b_term = 2.0 * delta - c * c / (s + kEps);
    if (c < 0.0 && b_term < 0.0) {
      out.optim_case = 3;
    } else if (c < 0.0 && b_term >= 0.0) {
      out.optim_case = 2;
    } else if (c >= 0.0 && b_term >= 0.0) {
      out.optim_case = 1;
    } else {
      out.optim_case = 0;
      out.recovery = true;
      return out;
    }
    if (out.optim_case <= 2) {
      const double inf = std::numeric_limits<double>::infinity();
      const double lam_mid = r / (c + (c >= 0.0 ? kEps : -kEps));
      // Dual for nu > 0 (f_a) and nu = 0 (f_b), each on its admissible range.
      double lam_a = std::sqrt(a_term / (b_term + kEps));
      double lam_b = std::sqrt(q / (2.0 * delta));
      const auto proj = [](double x, double lo, double hi) { return std::max(lo, std::min(hi, x)); };
      if (c < 0.0) {
        lam_a = proj(lam_a, 0.0, lam_mid);
        lam_b = proj(lam_b, lam_mid, inf);
      } else {
        lam_a = proj(lam_a, lam_mid, inf);
        lam_b = proj(lam_b, 0.0, lam_mid);
      }
      const double f_a = -0.5 * (a_term / (lam_a + kEps) + b_term * lam_a) - r * c / (s + kEps);
      const double f_b = -0.5 * (q / (lam_b + kEps) + 2.0 * delta * lam_b);
      out.lambda = f_a >= f_b ? lam_a : lam_b;
      out.nu = std::max(0.0, out.lambda * c - r) / (s + kEps);
      return out;
    }
  }
  out.lambda = std::sqrt(q / (2.0 * delta));
  out.nu = 0.0;
  return out;
}

PolicyUpdate trpo_step(const GaussianPolicy& policy, ValueNets& values, const RolloutBatch& batch,
                       const TrustRegionConfig& config) {
  if (batch.size() == 0) throw ConfigError("trpo_step: empty batch");
  PolicyUpdate out{policy, {}};
  fill_batch_stats(out.report, batch, config);

  const Eigen::MatrixXd& obs = batch.observations;
  const double n = static_cast<double>(batch.size());
  std::vector<double> signal(batch.size());
  for (std::size_t t = 0; t < batch.size(); ++t) signal[t] = batch.rewards[t] - config.collision_penalty * batch.costs[t];

  const std::vector<double> v = values.reward.predict(obs);
  AdvantageEstimate adv = gae_advantages(batch, signal, v, config.gamma, config.gae_lambda);
  normalize_advantages(adv.advantages);
  const std::vector<double> weights = scaled(adv.advantages, 1.0 / n);

  const std::vector<double> old_lp = batch_log_probs(policy, obs, batch.actions);
  const ValueAndGradient sg = weighted_surrogate(policy, obs, batch.actions, old_lp, weights);
  const Eigen::VectorXd& g = sg.gradient;

  if (g.norm() > 1e-12) {
    Mlp::Tape tape;
    policy.mean_batch(obs, &tape);
    const auto fvp = [&](const Eigen::VectorXd& x) { return policy.fisher_vector_product(tape, x, config.cg_damping); };
    const CgResult cg = conjugate_gradient(fvp, g, config.cg_iterations);
    const double shs = cg.x.dot(fvp(cg.x));
    if (shs > 0.0 && std::isfinite(shs)) {
      const Eigen::VectorXd full_step = std::sqrt(2.0 * config.kl_step / shs) * cg.x;
      const Eigen::VectorXd theta_old = policy.flat_params();
      double fraction = 1.0;
      for (int k = 0; k < config.max_backtracks; ++k, fraction *= config.backtrack) {
        GaussianPolicy candidate = with_params(policy, theta_old + fraction * full_step);
        const double kl = kl_mean(policy, candidate, obs);
        const double improvement = surrogate_value(candidate, obs, batch.actions, old_lp, weights) - sg.value;
        if (kl <= config.kl_step && improvement > 0.0) {
          out.policy = std::move(candidate);
          out.report.step_accepted = true;
          out.report.kl = kl;
          out.report.surrogate_improvement = improvement;
          out.report.backtracks = k;
          break;
        }
      }
    }
  }

  out.report.value_loss = values.reward.fit(obs, adv.returns, config.value_steps, config.value_lr);
  return out;
}

PolicyUpdate cpo_step(const GaussianPolicy& policy, ValueNets& values, const RolloutBatch& batch,
                      const TrustRegionConfig& config) {
  if (batch.size() == 0 || batch.episodes.empty()) throw ConfigError("cpo_step: empty batch");
  PolicyUpdate out{policy, {}};
  fill_batch_stats(out.report, batch, config);

  const Eigen::MatrixXd& obs = batch.observations;
  const double n = static_cast<double>(batch.size());
  const double episodes = static_cast<double>(batch.episodes.size());

  const std::vector<double> v = values.reward.predict(obs);
  AdvantageEstimate adv = gae_advantages(batch, batch.rewards, v, config.gamma, config.gae_lambda);
  normalize_advantages(adv.advantages);
  const std::vector<double> reward_weights = scaled(adv.advantages, 1.0 / n);

  const std::vector<double> vc = values.cost.predict(obs);
  const AdvantageEstimate cadv = gae_advantages(batch, batch.costs, vc, config.gamma_cost, config.gae_lambda);
  // Per-episode discounted sum of cost advantages, averaged over episodes:
  // its gradient estimates the gradient of J_C.
  const std::vector<double> discounts = episode_discounts(batch, config.gamma_cost);
  std::vector<double> cost_weights(batch.size());
  for (std::size_t t = 0; t < batch.size(); ++t) cost_weights[t] = discounts[t] * cadv.advantages[t] / episodes;

  const std::vector<double> old_lp = batch_log_probs(policy, obs, batch.actions);
  const ValueAndGradient sg = weighted_surrogate(policy, obs, batch.actions, old_lp, reward_weights);
  const ValueAndGradient sc = weighted_surrogate(policy, obs, batch.actions, old_lp, cost_weights);
  const Eigen::VectorXd& g = sg.gradient;
  const Eigen::VectorXd& b = sc.gradient;
  const double c = out.report.jc - config.alpha;

  Mlp::Tape tape;
  policy.mean_batch(obs, &tape);
  const auto fvp = [&](const Eigen::VectorXd& x) { return policy.fisher_vector_product(tape, x, config.cg_damping); };

  const bool b_negligible = b.squaredNorm() <= 1e-8;
  const bool g_negligible = g.norm() <= 1e-12;
  Eigen::VectorXd step = Eigen::VectorXd::Zero(g.size());
  CpoDual dual;

  const Eigen::VectorXd v_dir = g_negligible ? Eigen::VectorXd::Zero(g.size())
                                             : conjugate_gradient(fvp, g, config.cg_iterations).x;
  const double q = g.dot(v_dir);
  if (b_negligible && c < 0.0) {
    dual = solve_cpo_dual(q, 0.0, 0.0, c, config.kl_step, true);
    if (!g_negligible && q > 0.0) step = v_dir / dual.lambda;
  } else {
    const Eigen::VectorXd w_dir = conjugate_gradient(fvp, b, config.cg_iterations).x;
    const double r = g.dot(w_dir);
    const double s = b.dot(w_dir);
    dual = solve_cpo_dual(q, r, s, c, config.kl_step, false);
    if (dual.recovery) {
      if (s > 0.0) step = -std::sqrt(2.0 * config.kl_step / (s + kEps)) * w_dir;
    } else if (dual.lambda > 0.0) {
      step = (v_dir - dual.nu * w_dir) / (dual.lambda + kEps);
    }
  }
  out.report.optim_case = dual.optim_case;
  if (!step.allFinite()) throw NumericalError("non-finite CPO step");

  if (step.squaredNorm() > 0.0) {
    const Eigen::VectorXd theta_old = policy.flat_params();
    const double cost_bound = std::max(0.0, -c);
    double fraction = 1.0;
    for (int k = 0; k < config.max_backtracks; ++k, fraction *= config.backtrack) {
      GaussianPolicy candidate = with_params(policy, theta_old + fraction * step);
      const double kl = kl_mean(policy, candidate, obs);
      const double improvement = surrogate_value(candidate, obs, batch.actions, old_lp, reward_weights) - sg.value;
      const double cost_change = surrogate_value(candidate, obs, batch.actions, old_lp, cost_weights) - sc.value;
      const bool reward_ok = dual.optim_case <= 1 || improvement > 0.0;
      if (kl <= config.kl_step && cost_change <= cost_bound && reward_ok) {
        out.policy = std::move(candidate);
        out.report.step_accepted = true;
        out.report.kl = kl;
        out.report.surrogate_improvement = improvement;
        out.report.cost_surrogate_change = cost_change;
        out.report.backtracks = k;
        break;
      }
    }
  }

  out.report.value_loss = values.reward.fit(obs, adv.returns, config.value_steps, config.value_lr);
  out.report.cost_value_loss = values.cost.fit(obs, cadv.returns, config.value_steps, config.value_lr);
  return out;
}

}  // namespace ril
