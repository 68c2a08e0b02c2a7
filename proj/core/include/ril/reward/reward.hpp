#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ril/reward/distance_field.hpp"
#include "ril/world/occupancy_grid.hpp"
#include "ril/world/pose.hpp"

namespace ril {

/// Choice of the progress measure d(s) in r_t = -(d(s_t) - d(s_{t-1})).
enum class RewardVariant { Sparse, Euclidean, ShortestPath };

std::string_view to_string(RewardVariant variant);
/// Accepts "sparse", "euclidean", "shortest_path". Throws ConfigError.
RewardVariant parse_reward_variant(std::string_view text);

struct RewardSpec {
  RewardVariant variant = RewardVariant::Sparse;
  double success_bonus = 10.0;
  Pose goal;
  /// Required for ShortestPath, built for `goal`.
  std::shared_ptr<const DistanceField> field;
};

/// Builds a spec, computing the distance field (obstacles inflated by
/// `inflate`) when the variant needs one.
RewardSpec make_reward_spec(RewardVariant variant, const OccupancyGrid& grid, const Pose& goal, double inflate,
                            double success_bonus = 10.0);

/// Sparse: 0. Euclidean: planar distance to the goal. ShortestPath: field
/// value at the pose's cell (nearest reachable cell if blocked); +inf when
/// no reachable cell is near.
double d_of_state(const RewardSpec& spec, const Pose& pose);

/// success_bonus on success, else -(d(current) - d(previous)).
double reward(const RewardSpec& spec, const Pose& previous, const Pose& current, bool success);

/// Crash indicator cost.
inline double cost(bool crashed) { return crashed ? 1.0 : 0.0; }

struct CostSpec {
  double alpha = 0.4;
  double gamma_cost = 0.995;
};

/// sum_t gamma^t seq[t], accumulated backwards (G_t = r_t + gamma G_{t+1}).
double discounted_return(std::span<const double> seq, double gamma);

}  // namespace ril
