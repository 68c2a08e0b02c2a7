#pragma once

#include <optional>

#include "ril/common/random.hpp"
#include "ril/world/lidar.hpp"
#include "ril/world/occupancy_grid.hpp"
#include "ril/world/pose.hpp"

namespace ril {

/// Translational / rotational velocity command.
struct Command {
  double v = 0.0;
  double omega = 0.0;
};

struct CommandLimits {
  double v_max = 0.5;
  double omega_max = 1.0;
};

/// Simulator constants. Control runs at 5 Hz (dt = 0.2 s); the translation
/// of each step is swept in `substeps` collision checks.
struct SimConfig {
  double dt = 0.2;
  int substeps = 4;
  double robot_radius = 0.18;
  double goal_radius = 0.3;
  CommandLimits limits;
  LidarModel lidar;
};

struct StepOutcome {
  Pose pose;
  LidarScan scan;
  bool crashed = false;
  bool reached_goal = false;
  Command applied;  ///< command after clamping to the limits
};

/// Clamps v to [0, v_max] and omega to [-omega_max, omega_max]. NaN maps to 0.
Command clamp_command(const Command& command, const CommandLimits& limits);

bool in_collision(const OccupancyGrid& grid, const Pose& pose, double robot_radius);

/// Kinematic part of step(): everything except the scan at the new pose.
StepOutcome advance(const OccupancyGrid& grid, const Pose& pose, const Command& command, const Pose& goal,
                    const SimConfig& config);

/// One 5 Hz control step of the unicycle. A translation that would make the
/// robot disc overlap an obstacle is cancelled (rotation still applies) and
/// reported as a crash; a crashed step never reports reaching the goal.
StepOutcome step(const OccupancyGrid& grid, const Pose& pose, const Command& command, const Pose& goal,
                 const SimConfig& config, Rng* noise_rng = nullptr);

}  // namespace ril
