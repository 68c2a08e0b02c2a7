#include "ril/world/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace ril {

Command clamp_command(const Command& command, const CommandLimits& limits) {
  const double v = std::isnan(command.v) ? 0.0 : command.v;
  const double w = std::isnan(command.omega) ? 0.0 : command.omega;
  return {std::clamp(v, 0.0, limits.v_max), std::clamp(w, -limits.omega_max, limits.omega_max)};
}

bool in_collision(const OccupancyGrid& grid, const Pose& pose, double robot_radius) {
  return disc_collides(grid, pose.x, pose.y, robot_radius);
}

StepOutcome advance(const OccupancyGrid& grid, const Pose& pose, const Command& command, const Pose& goal,
                    const SimConfig& config) {
  StepOutcome out;
  out.applied = clamp_command(command, config.limits);

  const double travel = out.applied.v * config.dt;
  const double tx = travel * std::cos(pose.theta);
  const double ty = travel * std::sin(pose.theta);
  const int substeps = std::max(1, config.substeps);

  bool blocked = false;
  for (int k = 1; k <= substeps && !blocked; ++k) {
    const double f = static_cast<double>(k) / substeps;
    blocked = disc_collides(grid, pose.x + f * tx, pose.y + f * ty, config.robot_radius);
  }

  const double theta = pose.theta + out.applied.omega * config.dt;
  out.pose = blocked ? Pose(pose.x, pose.y, theta) : Pose(pose.x + tx, pose.y + ty, theta);
  out.crashed = blocked;
  out.reached_goal = !blocked && distance(out.pose, goal) <= config.goal_radius;
  return out;
}

StepOutcome step(const OccupancyGrid& grid, const Pose& pose, const Command& command, const Pose& goal,
                 const SimConfig& config, Rng* noise_rng) {
  StepOutcome out = advance(grid, pose, command, goal, config);
  out.scan = noise_rng != nullptr ? scan(grid, out.pose, config.lidar, *noise_rng) : scan(grid, out.pose, config.lidar);
  return out;
}

}  // namespace ril
