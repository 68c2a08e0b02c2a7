#include "ril/reward/reward.hpp"

#include <stdexcept>

#include "ril/common/error.hpp"

namespace ril {

std::string_view to_string(RewardVariant variant) {
  switch (variant) {
    case RewardVariant::Sparse: return "sparse";
    case RewardVariant::Euclidean: return "euclidean";
    case RewardVariant::ShortestPath: return "shortest_path";
  }
  return "unknown";
}

RewardVariant parse_reward_variant(std::string_view text) {
  if (text == "sparse") return RewardVariant::Sparse;
  if (text == "euclidean") return RewardVariant::Euclidean;
  if (text == "shortest_path" || text == "shortest-path") return RewardVariant::ShortestPath;
  throw ConfigError("unknown reward variant '" + std::string(text) + "'");
}

RewardSpec make_reward_spec(RewardVariant variant, const OccupancyGrid& grid, const Pose& goal, double inflate,
                            double success_bonus) {
  RewardSpec spec;
  spec.variant = variant;
  spec.goal = goal;
  spec.success_bonus = success_bonus;
  if (variant == RewardVariant::ShortestPath) {
    spec.field = std::make_shared<const DistanceField>(dijkstra_field(grid, goal, inflate));
  }
  return spec;
}

double d_of_state(const RewardSpec& spec, const Pose& pose) {
  switch (spec.variant) {
    case RewardVariant::Sparse: return 0.0;
    case RewardVariant::Euclidean: return distance(pose, spec.goal);
    case RewardVariant::ShortestPath:
      if (!spec.field) throw std::logic_error("shortest-path reward without a distance field");
      return spec.field->lookup(pose.position());
  }
  return 0.0;
}

double reward(const RewardSpec& spec, const Pose& previous, const Pose& current, bool success) {
  if (success) return spec.success_bonus;
  return -(d_of_state(spec, current) - d_of_state(spec, previous));
}

double discounted_return(std::span<const double> seq, double gamma) {
  double g = 0.0;
  for (std::size_t t = seq.size(); t-- > 0;) g = seq[t] + gamma * g;
  return g;
}

}  // namespace ril
