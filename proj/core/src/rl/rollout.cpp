#include "ril/rl/rollout.hpp"

#include <cmath>
#include <numeric>

#include "ril/common/error.hpp"

namespace ril {

RolloutBatch collect_batch(const TrainingEnv& env, const GaussianPolicy& policy, int batch_steps, int episode_cap,
                           std::uint64_t seed) {
  if (env.maps.empty()) throw ConfigError("training environment has no maps");
  if (episode_cap < 1 || batch_steps < episode_cap) throw ConfigError("batch size must be >= episode cap >= 1");

  std::vector<Observation> observations;
  std::vector<std::array<double, 2>> actions;
  RolloutBatch batch;
  observations.reserve(static_cast<std::size_t>(batch_steps) + episode_cap);
  actions.reserve(observations.capacity());

  const bool noisy = env.sim.lidar.noise_std > 0.0;
  for (std::uint64_t e = 0; batch.size() < static_cast<std::size_t>(batch_steps); ++e) {
    Rng rng = make_rng(seed, {e});
    EpisodeRecord ep;
    ep.map_index = static_cast<int>(std::uniform_int_distribution<std::size_t>(0, env.maps.size() - 1)(rng));
    const EpisodeSampler& sampler = env.maps[ep.map_index];
    const OccupancyGrid& grid = sampler.grid();
    const PosePair pair = sampler.sample(rng);
    ep.start = pair.start;
    ep.goal = pair.goal;
    ep.begin = batch.size();
    const RewardSpec spec = make_reward_spec(env.reward, grid, pair.goal, env.field_inflate, env.success_bonus);

    Pose pose = pair.start;
    LidarScan current_scan = noisy ? scan(grid, pose, env.sim.lidar, rng) : scan(grid, pose, env.sim.lidar);
    double d_prev = d_of_state(spec, pose);
    ep.d_start = d_prev;
    const int id = static_cast<int>(batch.episodes.size());
    for (int t = 0; t < episode_cap; ++t) {
      const Observation obs = build_observation(current_scan, pose, pair.goal);
      const ActionDistribution dist = policy.forward(obs, PolicyMode::Eval);
      const auto action = sample_action(dist, rng);
      StepOutcome out = step(grid, pose, {action[0], action[1]}, pair.goal, env.sim, noisy ? &rng : nullptr);

      const double d_now = d_of_state(spec, out.pose);
      double r;
      if (out.reached_goal) {
        r = spec.success_bonus;
      } else if (std::isfinite(d_now) && std::isfinite(d_prev)) {
        r = -(d_now - d_prev);
      } else {
        r = 0.0;
        ep.valid = false;
      }

      observations.push_back(obs);
      actions.push_back(action);
      batch.log_probs.push_back(log_prob(dist, action));
      batch.rewards.push_back(r);
      batch.costs.push_back(cost(out.crashed));
      batch.done.push_back(0);
      batch.episode_ids.push_back(id);
      batch.poses.push_back(out.pose);
      if (out.crashed) ++ep.crash_steps;

      pose = out.pose;
      d_prev = d_now;
      current_scan = std::move(out.scan);
      if (out.reached_goal) {
        ep.success = true;
        break;
      }
    }
    batch.done.back() = 1;
    ep.end = batch.size();
    ep.d_end = d_prev;
    batch.episodes.push_back(ep);
  }

  batch.observations = to_matrix(observations);
  batch.actions.resize(2, static_cast<Eigen::Index>(actions.size()));
  for (std::size_t j = 0; j < actions.size(); ++j) {
    batch.actions.col(static_cast<Eigen::Index>(j)) << actions[j][0], actions[j][1];
  }
  return batch;
}

BatchSummary summarize(const RolloutBatch& batch) {
  BatchSummary s;
  if (batch.episodes.empty()) return s;
  double successes = 0.0;
  double crashed = 0.0;
  double crash_steps = 0.0;
  double returns = 0.0;
  double length = 0.0;
  for (const auto& ep : batch.episodes) {
    successes += ep.success ? 1.0 : 0.0;
    crashed += ep.crash_steps > 0 ? 1.0 : 0.0;
    crash_steps += ep.crash_steps;
    length += static_cast<double>(ep.length());
    for (std::size_t t = ep.begin; t < ep.end; ++t) returns += batch.rewards[t];
  }
  const double n = static_cast<double>(batch.episodes.size());
  s.mean_return = returns / n;
  s.success_rate = successes / n;
  s.crash_rate = crashed / n;
  s.mean_crash_steps = crash_steps / n;
  s.mean_length = length / n;
  return s;
}

RolloutBatch make_batch(const Eigen::MatrixXd& observations, const Eigen::Matrix2Xd& actions,
                        std::vector<double> log_probs, std::vector<double> rewards, std::vector<double> costs,
                        const std::vector<std::size_t>& episode_lengths) {
  const std::size_t n = rewards.size();
  const std::size_t total = std::accumulate(episode_lengths.begin(), episode_lengths.end(), std::size_t{0});
  if (total != n || log_probs.size() != n || costs.size() != n || static_cast<std::size_t>(observations.cols()) != n ||
      static_cast<std::size_t>(actions.cols()) != n) {
    throw std::invalid_argument("make_batch: inconsistent sizes");
  }
  RolloutBatch batch;
  batch.observations = observations;
  batch.actions = actions;
  batch.log_probs = std::move(log_probs);
  batch.rewards = std::move(rewards);
  batch.costs = std::move(costs);
  batch.done.assign(n, 0);
  batch.episode_ids.resize(n);
  batch.poses.assign(n, Pose{});
  std::size_t begin = 0;
  for (std::size_t e = 0; e < episode_lengths.size(); ++e) {
    EpisodeRecord ep;
    ep.begin = begin;
    ep.end = begin + episode_lengths[e];
    for (std::size_t t = ep.begin; t < ep.end; ++t) {
      batch.episode_ids[t] = static_cast<int>(e);
      if (batch.costs[t] > 0.0) ++ep.crash_steps;
    }
    if (ep.end > ep.begin) batch.done[ep.end - 1] = 1;
    batch.episodes.push_back(ep);
    begin = ep.end;
  }
  return batch;
}

}  // namespace ril
