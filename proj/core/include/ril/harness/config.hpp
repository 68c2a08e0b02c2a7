#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ril/expert/demoset.hpp"
#include "ril/imitation/behavior_cloning.hpp"
#include "ril/policy/gaussian_policy.hpp"
#include "ril/reward/reward.hpp"
#include "ril/rl/trust_region.hpp"
#include "ril/world/episode_sampler.hpp"
#include "ril/world/kinematics.hpp"

namespace ril {

enum class Optimizer { Cpo, Trpo };

std::string_view to_string(Optimizer optimizer);
Optimizer parse_optimizer(std::string_view text);

/// One training / evaluation recipe. Every tunable constant of the pipeline
/// lives here and round-trips through the INI-style config file.
struct ExperimentConfig {
  std::string name = "model";
  std::uint64_t seed = 1;

  SimConfig sim;
  PolicyShape shape;
  double dropout_rate = 0.5;

  RewardVariant reward = RewardVariant::ShortestPath;
  double success_bonus = 10.0;
  double field_inflate = 0.18;

  EpisodeSamplerConfig sampling;
  ExpertConfig expert;

  std::vector<std::string> il_maps;
  int demos_per_map = 0;
  IlConfig il;

  std::vector<std::string> rl_maps;
  Optimizer optimizer = Optimizer::Cpo;
  TrustRegionConfig trust_region;
  int batch_steps = 4000;
  int episode_cap = 400;
  int rl_iterations = 100;
  int checkpoint_every = 10;
  int value_hidden = 64;
  int rolling_window = 20;

  std::vector<std::string> eval_maps;
  int eval_trials = 100;
  int eval_timeout_steps = 1500;

  /// Directory that relative map paths are resolved against.
  std::filesystem::path base_dir;

  /// Paths resolved against base_dir.
  std::filesystem::path resolve(const std::string& path) const;
};

/// Parses "key = value" lines grouped under [section] headers. Unknown
/// sections or keys are errors. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Serializes every field; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const ExperimentConfig& config);

}  // namespace ril
