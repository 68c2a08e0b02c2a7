#pragma once

#include <span>
#include <vector>

#include "ril/rl/rollout.hpp"

namespace ril {

struct AdvantageEstimate {
  std::vector<double> advantages;
  std::vector<double> returns;  ///< value regression targets, advantage + value
};

/// Generalized advantage estimation within episodes:
///   delta_t = s_t + gamma V_{t+1} - V_t   (V after an episode end is 0)
///   A_t     = delta_t + gamma lambda A_{t+1}
/// `signal` is the per-step reward or cost. No normalization is applied.
AdvantageEstimate gae_advantages(const RolloutBatch& batch, std::span<const double> signal,
                                 std::span<const double> values, double gamma, double lambda);

/// In-place shift to zero mean and scale to unit (population) variance.
/// A constant vector becomes all zeros.
void normalize_advantages(std::vector<double>& advantages);

/// gamma^(t - episode start) for every step of the batch.
std::vector<double> episode_discounts(const RolloutBatch& batch, double gamma);

/// Mean over episodes of the discounted cost return.
double estimate_jc(const RolloutBatch& batch, double gamma_cost);

}  // namespace ril
