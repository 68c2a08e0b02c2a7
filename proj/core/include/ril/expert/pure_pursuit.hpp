#pragma once

#include <span>
#include <string>
#include <vector>

#include "ril/observation.hpp"
#include "ril/world/kinematics.hpp"
#include "ril/world/occupancy_grid.hpp"

namespace ril {

struct PurePursuitGains {
  double lookahead = 0.5;
  double k_omega = 2.0;
};

enum class DemoOutcome { Success, Crash, StepCap };

/// One expert run: the observation seen and the command issued at each
/// 5 Hz step.
struct Demonstration {
  std::string map;
  Pose start;
  Pose goal;
  std::vector<Observation> observations;
  std::vector<Command> commands;
  std::vector<Pose> poses;  ///< pose after each step
  DemoOutcome outcome = DemoOutcome::StepCap;
};

/// Pure-pursuit command toward the lookahead point on `path`.
/// `progress` is the index of the segment the robot was last projected on and
/// is advanced monotonically.
Command pure_pursuit_command(const Pose& pose, std::span<const Point2> path, std::size_t& progress,
                             const PurePursuitGains& gains, const CommandLimits& limits);

/// Drives the simulator along `path` from `start` until the goal is reached,
/// the robot crashes, or `step_cap` steps elapse.
Demonstration track_path(const OccupancyGrid& grid, std::span<const Point2> path, const Pose& start, const Pose& goal,
                         const PurePursuitGains& gains, const SimConfig& sim, int step_cap);

}  // namespace ril
