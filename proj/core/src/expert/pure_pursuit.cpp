#include "ril/expert/pure_pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ril {
namespace {

// Closest point to p on segment a-b, as a parameter in [0, 1].
double project(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return 0.0;
  return std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
}

Point2 lerp(const Point2& a, const Point2& b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

}  // namespace

Command pure_pursuit_command(const Pose& pose, std::span<const Point2> path, std::size_t& progress,
                             const PurePursuitGains& gains, const CommandLimits& limits) {
  Point2 target = path.back();
  if (path.size() >= 2) {
    // Re-project on the current and the next segments only, so the robot
    // cannot skip ahead across a wall.
    const Point2 p = pose.position();
    std::size_t best_seg = progress;
    double best_t = 0.0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t s = progress; s + 1 < path.size() && s <= progress + 1; ++s) {
      const double t = project(p, path[s], path[s + 1]);
      const double d = distance(p, lerp(path[s], path[s + 1], t));
      if (d < best_d) {
        best_d = d;
        best_seg = s;
        best_t = t;
      }
    }
    progress = best_seg;

    // Walk `lookahead` meters along the path from the projection.
    double remaining = gains.lookahead;
    Point2 from = lerp(path[best_seg], path[best_seg + 1], best_t);
    std::size_t seg = best_seg;
    target = path.back();
    while (seg + 1 < path.size()) {
      const double left = distance(from, path[seg + 1]);
      if (left >= remaining) {
        target = lerp(from, path[seg + 1], remaining / left);
        break;
      }
      remaining -= left;
      from = path[seg + 1];
      ++seg;
    }
  }

  const double bearing = relative_bearing(pose, target);
  Command cmd;
  cmd.omega = std::clamp(gains.k_omega * bearing, -limits.omega_max, limits.omega_max);
  cmd.v = std::clamp(limits.v_max * std::max(0.0, std::cos(bearing)), 0.0, limits.v_max);
  return cmd;
}

Demonstration track_path(const OccupancyGrid& grid, std::span<const Point2> path, const Pose& start, const Pose& goal,
                         const PurePursuitGains& gains, const SimConfig& sim, int step_cap) {
  Demonstration demo;
  demo.map = grid.name();
  demo.start = start;
  demo.goal = goal;

  Pose pose = start;
  LidarScan current_scan = scan(grid, pose, sim.lidar);
  std::size_t progress = 0;
  for (int t = 0; t < step_cap; ++t) {
    const Command cmd = pure_pursuit_command(pose, path, progress, gains, sim.limits);
    demo.observations.push_back(build_observation(current_scan, pose, goal));
    demo.commands.push_back(cmd);
    StepOutcome out = step(grid, pose, cmd, goal, sim);
    pose = out.pose;
    demo.poses.push_back(pose);
    current_scan = std::move(out.scan);
    if (out.crashed) {
      demo.outcome = DemoOutcome::Crash;
      return demo;
    }
    if (out.reached_goal) {
      demo.outcome = DemoOutcome::Success;
      return demo;
    }
  }
  demo.outcome = DemoOutcome::StepCap;
  return demo;
}

}  // namespace ril
