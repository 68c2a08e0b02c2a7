#include "ril/rl/advantage.hpp"

#include <cmath>
#include <stdexcept>

#include "ril/reward/reward.hpp"

namespace ril {

AdvantageEstimate gae_advantages(const RolloutBatch& batch, std::span<const double> signal,
                                 std::span<const double> values, double gamma, double lambda) {
  const std::size_t n = batch.size();
  if (signal.size() != n || values.size() != n) throw std::invalid_argument("gae_advantages: size mismatch");
  AdvantageEstimate out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double next_value = 0.0;
  double next_advantage = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    if (batch.done[t] != 0) {
      next_value = 0.0;
      next_advantage = 0.0;
    }
    const double delta = signal[t] + gamma * next_value - values[t];
    const double advantage = delta + gamma * lambda * next_advantage;
    out.advantages[t] = advantage;
    out.returns[t] = advantage + values[t];
    next_value = values[t];
    next_advantage = advantage;
  }
  return out;
}

void normalize_advantages(std::vector<double>& advantages) {
  if (advantages.empty()) return;
  double mean = 0.0;
  for (double a : advantages) mean += a;
  mean /= static_cast<double>(advantages.size());
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  var /= static_cast<double>(advantages.size());
  const double std = std::sqrt(var);
  for (double& a : advantages) a = std > 1e-12 ? (a - mean) / std : 0.0;
}

std::vector<double> episode_discounts(const RolloutBatch& batch, double gamma) {
  std::vector<double> w(batch.size());
  for (const auto& ep : batch.episodes) {
    double g = 1.0;
    for (std::size_t t = ep.begin; t < ep.end; ++t) {
      w[t] = g;
      g *= gamma;
    }
  }
  return w;
}

double estimate_jc(const RolloutBatch& batch, double gamma_cost) {
  if (batch.episodes.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ep : batch.episodes) {
    total += discounted_return(std::span<const double>(batch.costs).subspan(ep.begin, ep.length()), gamma_cost);
  }
  return total / static_cast<double>(batch.episodes.size());
}

}  // namespace ril
