#include "ril/world/free_space.hpp"

#include "ril/common/error.hpp"

namespace ril {

FreeSpaceSampler::FreeSpaceSampler(const OccupancyGrid& grid, double clearance) : clearance_(clearance) {
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      if (grid.occupied(ix, iy)) continue;
      const Point2 c = grid.cell_center(ix, iy);
      if (clearance > 0.0 && disc_collides(grid, c.x, c.y, clearance)) continue;
      cells_.push_back({ix, iy});
      centers_.push_back(c);
    }
  }
  if (cells_.empty()) {
    throw GeometryError("no free cell in map '" + grid.name() + "' has clearance " + std::to_string(clearance) +
                        " m");
  }
}

Pose FreeSpaceSampler::sample(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, centers_.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point2 c = centers_[pick(rng)];
  // unit in [0, 1) maps to heading in (-pi, pi].
  return Pose(c.x, c.y, kPi - 2.0 * kPi * unit(rng));
}

Pose sample_free_pose(const OccupancyGrid& grid, std::uint64_t seed, double clearance) {
  Rng rng(seed);
  return FreeSpaceSampler(grid, clearance).sample(rng);
}

}  // namespace ril
