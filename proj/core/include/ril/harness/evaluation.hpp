#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ril/harness/config.hpp"
#include "ril/policy/gaussian_policy.hpp"
#include "ril/world/episode_sampler.hpp"
#include "ril/world/kinematics.hpp"

namespace ril {

enum class TrialOutcome { Success, Timeout, Crash };

std::string_view to_string(TrialOutcome outcome);
TrialOutcome parse_trial_outcome(std::string_view text);

struct EvalSettings {
  SimConfig sim;
  /// Start/goal sampling for the trial list.
  EpisodeSamplerConfig sampling;
  int timeout_steps = 1500;
  RewardVariant reward = RewardVariant::ShortestPath;
  double success_bonus = 10.0;
  double field_inflate = 0.18;
};

EvalSettings eval_settings(const ExperimentConfig& config);

struct EvalTrial {
  int map_index = 0;
  int trial = 0;
  PosePair pair;
};

/// Trial k on map m draws from derive_seed(seed, {m, k}); the list depends
/// only on (maps, trials, seed, sampling).
std::vector<EvalTrial> evaluation_trials(std::span<const std::shared_ptr<const OccupancyGrid>> maps,
                                         int trials_per_map, std::uint64_t seed, const EpisodeSamplerConfig& sampling);

struct TrajectoryStep {
  int t = 0;     ///< 1-based step index
  Pose pose;     ///< pose after the step
  Command command;  ///< applied (clamped) command
  double reward = 0.0;
  double cost = 0.0;
};

struct EvalRecord {
  std::string map;
  int map_index = 0;
  int trial = 0;
  Pose start;
  Pose goal;
  TrialOutcome outcome = TrialOutcome::Timeout;
  int steps = 0;
  double path_length = 0.0;
  /// Planner-relative ratios; NaN unless the trial succeeded.
  double lambda_d = 0.0;
  double lambda_t = 0.0;
  std::string trajectory_file;
  std::vector<TrajectoryStep> trajectory;
};

/// Runs one trial with the policy mean. Ends at the first crash, on reaching
/// the goal, or after settings.timeout_steps steps.
EvalRecord run_trial(const GaussianPolicy& policy, const OccupancyGrid& grid, const EvalTrial& trial,
                     const EvalSettings& settings, std::uint64_t seed = 0);

std::vector<EvalRecord> evaluate(const GaussianPolicy& policy,
                                 std::span<const std::shared_ptr<const OccupancyGrid>> maps, int trials_per_map,
                                 std::uint64_t seed, const EvalSettings& settings);

struct RelativeMetrics {
  double lambda_d = 0.0;
  double lambda_t = 0.0;
  double planner_length = 0.0;
};

/// lambda_d = path length / planner length; lambda_t = steps / planner steps
/// at v_max. The planner length is the expert plan for the robot disc
/// (inflation = robot radius) up to the goal disc, i.e. minus goal_radius.
/// nullopt for failed trials or when no plan exists.
std::optional<RelativeMetrics> planner_relative_metrics(const EvalRecord& record, const OccupancyGrid& grid,
                                                        const EvalSettings& settings);

struct EvalAggregate {
  std::string map;  ///< "all" for the pooled row
  int trials = 0;
  int successes = 0;
  int timeouts = 0;
  int crashes = 0;
  double success_rate = 0.0;
  double timeout_rate = 0.0;
  double crash_rate = 0.0;
  int metric_count = 0;  ///< successful trials with planner ratios
  double median_lambda_d = 0.0;
  double median_lambda_t = 0.0;
  double mean_lambda_d = 0.0;
  double mean_lambda_t = 0.0;
};

/// Per map in order of first appearance, then the pooled "all" row.
std::vector<EvalAggregate> aggregate(std::span<const EvalRecord> records);

/// Writes one trajectory CSV per record, records.csv and summary.json.
/// Sets each record's trajectory_file. Output bytes depend only on inputs.
void export_trajectories(std::span<EvalRecord> records, const std::filesystem::path& directory,
                         const std::map<std::string, std::string>& metadata = {});

/// Reads records.csv back (trajectories are not loaded).
std::vector<EvalRecord> load_records(const std::filesystem::path& path);

}  // namespace ril
