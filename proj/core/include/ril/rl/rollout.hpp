#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ril/policy/gaussian_policy.hpp"
#include "ril/reward/reward.hpp"
#include "ril/world/episode_sampler.hpp"
#include "ril/world/kinematics.hpp"

namespace ril {

/// Everything needed to run training episodes: the training maps (with their
/// start/goal samplers), the reward shaping, and the simulator constants.
struct TrainingEnv {
  std::vector<EpisodeSampler> maps;
  RewardVariant reward = RewardVariant::ShortestPath;
  double success_bonus = 10.0;
  /// Obstacle inflation for the shortest-path distance field.
  double field_inflate = 0.18;
  SimConfig sim;
};

struct EpisodeRecord {
  int map_index = 0;
  Pose start;
  Pose goal;
  std::size_t begin = 0;  ///< first step index in the batch
  std::size_t end = 0;    ///< one past the last step
  bool success = false;   ///< otherwise the episode hit the step cap
  int crash_steps = 0;
  /// False when d(s) was infinite somewhere (ShortestPath shaping only); the
  /// affected transitions carry zero shaping reward.
  bool valid = true;
  double d_start = 0.0;
  double d_end = 0.0;

  std::size_t length() const { return end - begin; }
};

/// Time-indexed experience from several contiguous episodes.
struct RolloutBatch {
  Eigen::MatrixXd observations;  ///< 38 x T
  Eigen::Matrix2Xd actions;      ///< sampled (pre-clamp) commands
  std::vector<double> log_probs; ///< under the behavior policy
  std::vector<double> rewards;
  std::vector<double> costs;
  std::vector<std::uint8_t> done;
  std::vector<int> episode_ids;
  std::vector<Pose> poses;       ///< pose after each step
  std::vector<EpisodeRecord> episodes;

  std::size_t size() const { return rewards.size(); }
};

/// Runs episodes with actions sampled from the policy until at least
/// `batch_steps` steps are collected (the in-flight episode is finished).
/// Episodes end on success or after `episode_cap` steps; crashes do not end
/// them. Episode e draws all randomness from derive_seed(seed, {e}).
RolloutBatch collect_batch(const TrainingEnv& env, const GaussianPolicy& policy, int batch_steps, int episode_cap,
                           std::uint64_t seed);

struct BatchSummary {
  double mean_return = 0.0;  ///< undiscounted per-episode reward sum
  double success_rate = 0.0;
  double crash_rate = 0.0;   ///< fraction of episodes with at least one crash
  double mean_crash_steps = 0.0;
  double mean_length = 0.0;
};

BatchSummary summarize(const RolloutBatch& batch);

/// Builds a batch from raw per-step arrays, deriving done flags and episode
/// records from `episode_lengths`. Used for synthetic problems.
RolloutBatch make_batch(const Eigen::MatrixXd& observations, const Eigen::Matrix2Xd& actions,
                        std::vector<double> log_probs, std::vector<double> rewards, std::vector<double> costs,
                        const std::vector<std::size_t>& episode_lengths);

}  // namespace ril
