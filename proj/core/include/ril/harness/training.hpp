#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ril/common/error.hpp"
#include "ril/expert/demoset.hpp"
#include "ril/harness/config.hpp"
#include "ril/imitation/behavior_cloning.hpp"
#include "ril/policy/gaussian_policy.hpp"
#include "ril/rl/trust_region.hpp"

namespace ril {

/// Error raised inside the RL loop, tagged with the iteration it hit.
/// Keeps the kind of the underlying error.
class IterationError : public Error {
 public:
  IterationError(int iteration, const std::string& inner_kind, const std::string& message)
      : Error("iteration " + std::to_string(iteration) + ": " + message), iteration_(iteration), kind_(inner_kind) {}
  const char* kind() const noexcept override { return kind_.c_str(); }
  int iteration() const { return iteration_; }

 private:
  int iteration_;
  std::string kind_;
};

struct TrainingInputs {
  std::vector<std::shared_ptr<const OccupancyGrid>> il_maps;
  std::vector<std::shared_ptr<const OccupancyGrid>> rl_maps;
  /// Used instead of generating demonstrations when set.
  std::optional<DemoSet> demos;
  /// Starting policy instead of a fresh initialization.
  std::optional<GaussianPolicy> initial;
};

/// Loads the maps named in the config.
TrainingInputs load_training_inputs(const ExperimentConfig& config);

struct IterationRow {
  UpdateReport report;
  double rolling_success = 0.0;
  double rolling_crash = 0.0;
};

struct TrainingResult {
  GaussianPolicy policy;
  std::optional<IlReport> il;
  std::size_t demo_steps = 0;
  std::vector<IterationRow> iterations;
};

/// Returning false stops training after the current iteration.
using IterationCallback = std::function<bool(const IterationRow&)>;

/// Seed streams of one experiment. All randomness derives from config.seed.
enum class SeedStream : std::uint64_t { PolicyInit = 1, Demos = 2, Imitation = 3, Rollout = 4, ValueInit = 5 };
std::uint64_t stream_seed(const ExperimentConfig& config, SeedStream stream);

GaussianPolicy initial_policy(const ExperimentConfig& config);

/// Optional behavior cloning, then `rl_iterations` trust-region updates.
/// With a non-empty `out_dir` writes config.ini, demos.rildemo, il_curve.csv,
/// il.rilnet, iterations.csv, checkpoint_<iter>.rilnet every
/// checkpoint_every iterations, and final.rilnet.
TrainingResult run_training(const ExperimentConfig& config, const TrainingInputs& inputs,
                            const std::filesystem::path& out_dir = {}, const IterationCallback& callback = {});

/// Trailing mean over at most `window` entries ending at each index.
std::vector<double> rolling_mean(std::span<const double> values, int window);

std::string iteration_csv_header();
std::string iteration_csv_row(const IterationRow& row);

}  // namespace ril
