#include "ril/world/episode_sampler.hpp"

#include "ril/common/error.hpp"

namespace ril {

EpisodeSampler::EpisodeSampler(std::shared_ptr<const OccupancyGrid> grid, const EpisodeSamplerConfig& config)
    : grid_(std::move(grid)),
      config_(config),
      free_space_(*grid_, config.clearance),
      graph_(*grid_, config.clearance) {}

PosePair EpisodeSampler::sample(Rng& rng) const {
  const auto& labels = graph_.components();
  for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
    PosePair pair{free_space_.sample(rng), free_space_.sample(rng)};
    if (distance(pair.start, pair.goal) < config_.min_distance) continue;
    const CellIndex s = grid_->cell_at(pair.start.position());
    const CellIndex g = grid_->cell_at(pair.goal.position());
    const int ls = labels[graph_.index(s)];
    if (ls >= 0 && ls == labels[graph_.index(g)]) return pair;
  }
  throw GeometryError("could not sample a connected start/goal pair in map '" + grid_->name() + "'");
}

}  // namespace ril
