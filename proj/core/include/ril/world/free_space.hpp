#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ril/common/random.hpp"
#include "ril/world/occupancy_grid.hpp"

namespace ril {

/// Uniform sampler over free cells whose center has at least `clearance`
/// meters to every occupied cell. Samples are cell centers with a heading
/// uniform in (-pi, pi].
class FreeSpaceSampler {
 public:
  /// Throws GeometryError when no cell satisfies the clearance.
  FreeSpaceSampler(const OccupancyGrid& grid, double clearance);

  Pose sample(Rng& rng) const;

  std::span<const CellIndex> eligible_cells() const { return cells_; }
  double clearance() const { return clearance_; }

 private:
  std::vector<CellIndex> cells_;
  std::vector<Point2> centers_;
  double clearance_ = 0.0;
};

Pose sample_free_pose(const OccupancyGrid& grid, std::uint64_t seed, double clearance);

}  // namespace ril
