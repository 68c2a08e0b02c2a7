#include "ril/observation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ril {

std::vector<double> min_pool(std::span<const double> ranges, int kernel) {
  if (kernel <= 0 || ranges.size() % static_cast<std::size_t>(kernel) != 0) {
    throw std::invalid_argument("min_pool: length " + std::to_string(ranges.size()) +
                                " is not divisible by kernel " + std::to_string(kernel));
  }
  std::vector<double> pooled(ranges.size() / kernel);
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    const auto window = ranges.subspan(i * kernel, static_cast<std::size_t>(kernel));
    pooled[i] = *std::min_element(window.begin(), window.end());
  }
  return pooled;
}

double normalize_range(double y, double r_max) { return 2.0 * (1.0 - std::min(y, r_max) / r_max) - 1.0; }

Observation build_observation(const LidarScan& scan, const Pose& robot, const Pose& goal) {
  const auto pooled = min_pool(scan.ranges, kPoolKernel);
  if (pooled.size() != static_cast<std::size_t>(kPooledBeams)) {
    throw std::invalid_argument("build_observation: expected " + std::to_string(kPooledBeams * kPoolKernel) +
                                " beams, got " + std::to_string(scan.ranges.size()));
  }
  Observation obs;
  for (int i = 0; i < kPooledBeams; ++i) obs.values[i] = normalize_range(pooled[i], scan.max_range);
  obs.values[kPooledBeams] = normalize_range(distance(robot, goal), scan.max_range);
  obs.values[kPooledBeams + 1] = relative_bearing(robot, goal.position()) / kPi;
  return obs;
}

Command denormalize_action(const NormalizedAction& action, const CommandLimits& limits) {
  const double a0 = std::clamp(std::isnan(action[0]) ? 0.0 : action[0], -1.0, 1.0);
  const double a1 = std::clamp(std::isnan(action[1]) ? 0.0 : action[1], -1.0, 1.0);
  return {limits.v_max * (a0 + 1.0) / 2.0, limits.omega_max * a1};
}

NormalizedAction normalize_command(const Command& command, const CommandLimits& limits) {
  return {2.0 * command.v / limits.v_max - 1.0, command.omega / limits.omega_max};
}

}  // namespace ril
