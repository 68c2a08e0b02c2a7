#pragma once

#include <vector>

#include "ril/common/random.hpp"
#include "ril/world/occupancy_grid.hpp"
#include "ril/world/pose.hpp"

namespace ril {

/// Planar laser range finder. Defaults mirror the training platform:
/// 1080 beams over 270 degrees, 30 m maximum range, no noise.
struct LidarModel {
  int beams = 1080;
  double fov = 1.5 * kPi;
  double max_range = 30.0;
  /// Standard deviation of additive Gaussian range noise; 0 disables it.
  double noise_std = 0.0;

  /// Bearing of beam i in the robot frame: -fov/2 + i*fov/(beams-1).
  double bearing(int beam) const { return -0.5 * fov + beam * fov / (beams - 1); }
};

struct LidarScan {
  std::vector<double> ranges;
  double fov = 1.5 * kPi;
  double max_range = 30.0;
};

/// Distance from `origin` to the first occupied cell along `bearing`
/// (relative to origin.theta), by exact grid traversal, clamped to max_range.
/// Throws GeometryError when the origin lies in an occupied cell.
double raycast(const OccupancyGrid& grid, const Pose& origin, double bearing, double max_range);

LidarScan scan(const OccupancyGrid& grid, const Pose& pose, const LidarModel& model = {});

/// Same as scan(), adding noise when model.noise_std > 0. Noisy ranges are
/// clipped back into (0, max_range].
LidarScan scan(const OccupancyGrid& grid, const Pose& pose, const LidarModel& model, Rng& noise_rng);

}  // namespace ril
