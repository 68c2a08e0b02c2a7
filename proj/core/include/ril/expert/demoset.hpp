#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ril/expert/pure_pursuit.hpp"
#include "ril/world/episode_sampler.hpp"

namespace ril {

struct ExpertConfig {
  PurePursuitGains gains;
  /// Start/goal sampling clearance and planner inflation.
  EpisodeSamplerConfig sampling;
  int step_cap = 400;
  /// Attempts allowed per requested demonstration.
  int retry_factor = 20;
};

/// Successful expert demonstrations grouped by map, in generation order.
struct DemoSet {
  std::vector<Demonstration> demos;
  std::map<std::string, int> per_map_counts;
  std::uint64_t seed = 0;

  std::size_t step_count() const;
};

/// Generates exactly `count_per_map` successful demonstrations on each map.
/// Attempt k on map m uses an rng derived from (seed, m, k), so the result is
/// a pure function of the inputs. Crashing or capped runs and unreachable
/// pairs are discarded. Throws ConfigError for count < 1 and GeometryError
/// when the retry budget runs out.
DemoSet generate_demoset(std::span<const std::shared_ptr<const OccupancyGrid>> maps, int count_per_map,
                         std::uint64_t seed, const ExpertConfig& expert, const SimConfig& sim);

// RILDEMO1 text: per map a header line "RILDEMO1 <map> <count> <seed>"
// followed by one CSV line per step: demo_id,t,<38 observation values>,v,omega

void write_demoset(std::ostream& out, const DemoSet& set);
void save_demoset(const DemoSet& set, const std::filesystem::path& path);

/// Reads RILDEMO1; start/goal poses are not stored and come back defaulted.
DemoSet read_demoset(std::istream& in);
DemoSet load_demoset(const std::filesystem::path& path);

}  // namespace ril
