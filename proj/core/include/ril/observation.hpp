#pragma once

#include <array>
#include <span>
#include <vector>

#include "ril/world/kinematics.hpp"
#include "ril/world/lidar.hpp"
#include "ril/world/pose.hpp"

namespace ril {

inline constexpr int kPoolKernel = 30;
inline constexpr int kPooledBeams = 36;
inline constexpr int kObservationSize = kPooledBeams + 2;

/// Normalized policy input: slots 0..35 pooled ranges, 36 goal distance,
/// 37 goal bearing. Every component lies in [-1, 1].
struct Observation {
  std::array<double, kObservationSize> values{};
};

/// Network output space before de-normalization.
using NormalizedAction = std::array<double, 2>;

/// Windowed minimum: out[i] = min(ranges[i*k .. (i+1)*k - 1]).
/// Throws std::invalid_argument when the length is not a multiple of k.
std::vector<double> min_pool(std::span<const double> ranges, int kernel = kPoolKernel);

/// Crops y at r_max, then maps [0, r_max] linearly onto [1, -1].
double normalize_range(double y, double r_max = 30.0);

/// Goal bearing beta in (-pi, pi] is encoded as beta / pi.
Observation build_observation(const LidarScan& scan, const Pose& robot, const Pose& goal);

/// Clamps to [-1, 1], then v = v_max*(a0+1)/2 and omega = omega_max*a1.
Command denormalize_action(const NormalizedAction& action, const CommandLimits& limits);

/// Inverse of denormalize_action on the command box.
NormalizedAction normalize_command(const Command& command, const CommandLimits& limits);

}  // namespace ril
