#include "ril/world/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ril/common/error.hpp"

namespace ril {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Occupancy lookup with the row counted from the bottom edge.
bool occupied_from_bottom(const OccupancyGrid& grid, int cx, int cy) {
  return grid.occupied(cx, grid.height() - 1 - cy);
}

}  // namespace

double raycast(const OccupancyGrid& grid, const Pose& origin, double bearing, double max_range) {
  const double res = grid.resolution();
  const double angle = origin.theta + bearing;
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);

  // Traverse in cell units.
  const double gx = origin.x / res;
  const double gy = origin.y / res;
  int cx = static_cast<int>(std::floor(gx));
  int cy = static_cast<int>(std::floor(gy));
  if (occupied_from_bottom(grid, cx, cy)) {
    throw GeometryError("raycast origin (" + std::to_string(origin.x) + ", " + std::to_string(origin.y) +
                        ") lies inside an occupied cell");
  }

  const int step_x = dx > 0.0 ? 1 : -1;
  const int step_y = dy > 0.0 ? 1 : -1;
  double t_max_x = dx > 0.0 ? (cx + 1 - gx) / dx : dx < 0.0 ? (gx - cx) / -dx : kInf;
  double t_max_y = dy > 0.0 ? (cy + 1 - gy) / dy : dy < 0.0 ? (gy - cy) / -dy : kInf;
  const double t_delta_x = dx != 0.0 ? 1.0 / std::abs(dx) : kInf;
  const double t_delta_y = dy != 0.0 ? 1.0 / std::abs(dy) : kInf;
  const double limit = max_range / res;

  while (true) {
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      t_max_x += t_delta_x;
      cx += step_x;
    } else {
      t = t_max_y;
      t_max_y += t_delta_y;
      cy += step_y;
    }
    if (t >= limit) return max_range;
    if (occupied_from_bottom(grid, cx, cy)) return t * res;
  }
}

LidarScan scan(const OccupancyGrid& grid, const Pose& pose, const LidarModel& model) {
  LidarScan out;
  out.fov = model.fov;
  out.max_range = model.max_range;
  out.ranges.resize(static_cast<std::size_t>(model.beams));
  for (int i = 0; i < model.beams; ++i) out.ranges[i] = raycast(grid, pose, model.bearing(i), model.max_range);
  return out;
}

LidarScan scan(const OccupancyGrid& grid, const Pose& pose, const LidarModel& model, Rng& noise_rng) {
  LidarScan out = scan(grid, pose, model);
  if (model.noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, model.noise_std);
    const double floor = 1e-3 * grid.resolution();
    for (double& r : out.ranges) r = std::clamp(r + noise(noise_rng), floor, model.max_range);
  }
  return out;
}

}  // namespace ril
