#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ril/policy/gaussian_policy.hpp"
#include "ril/rl/rollout.hpp"
#include "ril/rl/value_function.hpp"

namespace ril {

struct TrustRegionConfig {
  double kl_step = 0.01;  ///< delta, bound on the batch-mean KL
  int cg_iterations = 10;
  double cg_damping = 0.1;
  double backtrack = 0.8;
  int max_backtracks = 10;
  double alpha = 0.4;              ///< CPO bound on the expected discounted crash cost
  double collision_penalty = 0.0;  ///< TRPO: reward used is r - penalty * cost
  double gamma = 0.99;
  double gamma_cost = 0.995;
  double gae_lambda = 0.95;
  int value_steps = 80;
  double value_lr = 1e-2;
};

struct UpdateReport {
  int iteration = 0;
  double mean_return = 0.0;
  double success_rate = 0.0;
  double crash_rate = 0.0;
  double jc = 0.0;  ///< estimated discounted cost return of the behavior policy
  double kl = 0.0;  ///< KL(old || accepted); 0 without a step
  bool step_accepted = false;
  double surrogate_improvement = 0.0;
  double cost_surrogate_change = 0.0;
  /// CPO case: 0 infeasible (recovery), 1 infeasible but recoverable,
  /// 2 feasible with active constraint, 3 constraint inactive, 4 b ~ 0.
  /// -1 for TRPO.
  int optim_case = -1;
  int backtracks = 0;
  double value_loss = 0.0;
  double cost_value_loss = 0.0;
};

struct PolicyUpdate {
  GaussianPolicy policy;
  UpdateReport report;
};

/// Importance-weighted surrogate sum_t w_t * exp(log pi(a_t|s_t) - old_log_prob_t)
/// and its gradient w.r.t. the policy parameters.
ValueAndGradient weighted_surrogate(const GaussianPolicy& policy, const Eigen::MatrixXd& obs,
                                    const Eigen::Matrix2Xd& actions, const std::vector<double>& old_log_probs,
                                    const std::vector<double>& weights);

/// Log-probabilities of the batch actions under `policy` (eval mode).
std::vector<double> batch_log_probs(const GaussianPolicy& policy, const Eigen::MatrixXd& obs,
                                    const Eigen::Matrix2Xd& actions);

/// Solution of the linearized CPO subproblem
///   max g.x  s.t.  c + b.x <= 0,  x^T F x / 2 <= delta
/// expressed through q = g F^-1 g, r = g F^-1 b, s = b F^-1 b.
/// The step is x = (F^-1 g - nu F^-1 b) / lambda, or, when `recovery` is set,
/// x = -sqrt(2 delta / s) F^-1 b.
struct CpoDual {
  int optim_case = 0;
  double lambda = 0.0;
  double nu = 0.0;
  bool recovery = false;
};

CpoDual solve_cpo_dual(double q, double r, double s, double c, double delta, bool b_negligible);

/// TRPO with a fixed collision penalty folded into the reward. Accepts the
/// first backtracked step that improves the surrogate with mean KL <= delta;
/// otherwise returns the old parameters with step_accepted = false. The
/// reward value net is refit afterwards.
PolicyUpdate trpo_step(const GaussianPolicy& policy, ValueNets& values, const RolloutBatch& batch,
                       const TrustRegionConfig& config);

/// CPO with the constraint J_C <= alpha on the discounted crash cost. Both
/// value nets are refit afterwards.
PolicyUpdate cpo_step(const GaussianPolicy& policy, ValueNets& values, const RolloutBatch& batch,
                      const TrustRegionConfig& config);

}  // namespace ril
