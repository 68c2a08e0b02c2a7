#pragma once

#include <memory>

#include "ril/common/random.hpp"
#include "ril/world/free_space.hpp"
#include "ril/world/grid_graph.hpp"

namespace ril {

struct PosePair {
  Pose start;
  Pose goal;
};

struct EpisodeSamplerConfig {
  /// Clearance of sampled start/goal cell centers; also the inflation used
  /// for the reachability check.
  double clearance = 0.28;
  /// Minimum straight-line start/goal separation.
  double min_distance = 1.0;
  int max_attempts = 1000;
};

/// Draws start/goal pairs that are connected in the inflated grid and at
/// least `min_distance` apart.
class EpisodeSampler {
 public:
  EpisodeSampler(std::shared_ptr<const OccupancyGrid> grid, const EpisodeSamplerConfig& config);

  /// Throws GeometryError after config.max_attempts rejected draws.
  PosePair sample(Rng& rng) const;

  const OccupancyGrid& grid() const { return *grid_; }
  std::shared_ptr<const OccupancyGrid> grid_ptr() const { return grid_; }
  const GridGraph& graph() const { return graph_; }
  const EpisodeSamplerConfig& config() const { return config_; }

 private:
  std::shared_ptr<const OccupancyGrid> grid_;
  EpisodeSamplerConfig config_;
  FreeSpaceSampler free_space_;
  GridGraph graph_;
};

}  // namespace ril
