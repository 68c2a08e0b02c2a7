#include "ril/harness/training.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ril/common/format.hpp"
#include "ril/common/random.hpp"
#include "ril/policy/checkpoint.hpp"
#include "ril/rl/rollout.hpp"
#include "ril/rl/value_function.hpp"

namespace ril {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

std::string checkpoint_name(int iteration) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "checkpoint_%04d.rilnet", iteration);
  return buf;
}

std::vector<std::shared_ptr<const OccupancyGrid>> load_maps(const ExperimentConfig& config,
                                                            const std::vector<std::string>& paths) {
  std::vector<std::shared_ptr<const OccupancyGrid>> maps;
  for (const auto& p : paths) maps.push_back(std::make_shared<const OccupancyGrid>(load_map_file(config.resolve(p))));
  return maps;
}

}  // namespace

TrainingInputs load_training_inputs(const ExperimentConfig& config) {
  TrainingInputs inputs;
  inputs.il_maps = load_maps(config, config.il_maps);
  inputs.rl_maps = load_maps(config, config.rl_maps);
  return inputs;
}

std::uint64_t stream_seed(const ExperimentConfig& config, SeedStream stream) {
  return derive_seed(config.seed, {static_cast<std::uint64_t>(stream)});
}

GaussianPolicy initial_policy(const ExperimentConfig& config) {
  GaussianPolicy policy(config.shape, config.sim.limits, config.dropout_rate);
  Rng rng(stream_seed(config, SeedStream::PolicyInit));
  policy.initialize(rng);
  return policy;
}

std::vector<double> rolling_mean(std::span<const double> values, int window) {
  std::vector<double> out(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i >= static_cast<std::size_t>(window)) sum -= values[i - window];
    out[i] = sum / static_cast<double>(std::min<std::size_t>(i + 1, window));
  }
  return out;
}

std::string iteration_csv_header() {
  return "iter,mean_return,success_rate,crash_rate,jc,kl,step_accepted,surrogate_improvement,"
         "rolling_success,rolling_crash";
}

std::string iteration_csv_row(const IterationRow& row) {
  const UpdateReport& r = row.report;
  std::ostringstream out;
  out << r.iteration << ',' << format_double(r.mean_return) << ',' << format_double(r.success_rate) << ','
      << format_double(r.crash_rate) << ',' << format_double(r.jc) << ',' << format_double(r.kl) << ','
      << (r.step_accepted ? 1 : 0) << ',' << format_double(r.surrogate_improvement) << ','
      << format_double(row.rolling_success) << ',' << format_double(row.rolling_crash);
  return out.str();
}

TrainingResult run_training(const ExperimentConfig& config, const TrainingInputs& inputs,
                            const std::filesystem::path& out_dir, const IterationCallback& callback) {
  const bool write = !out_dir.empty();
  if (write) {
    std::filesystem::create_directories(out_dir);
    open_out(out_dir / "config.ini") << to_ini(config);
  }

  TrainingResult result{inputs.initial ? *inputs.initial : initial_policy(config), std::nullopt, 0, {}};

  const bool use_demos = inputs.demos.has_value() || config.demos_per_map > 0;
  if (use_demos) {
    DemoSet demos;
    if (inputs.demos) {
      demos = *inputs.demos;
    } else {
      if (inputs.il_maps.empty()) throw ConfigError("imitation.demos_per_map > 0 but no imitation maps");
      demos = generate_demoset(inputs.il_maps, config.demos_per_map, stream_seed(config, SeedStream::Demos),
                               config.expert, config.sim);
    }
    IlConfig il = config.il;
    il.dropout_rate = config.dropout_rate;
    il.seed = stream_seed(config, SeedStream::Imitation);
    IlResult trained = train_il(demos, result.policy, il);
    result.policy = std::move(trained.policy);
    result.il = std::move(trained.report);
    result.demo_steps = demos.step_count();
    if (write) {
      save_demoset(demos, out_dir / "demos.rildemo");
      save_checkpoint(result.policy, out_dir / "il.rilnet");
      auto curve = open_out(out_dir / "il_curve.csv");
      curve << "iteration,train_loss,validation_loss\n";
      for (const auto& p : result.il->curve)
        curve << p.iteration << ',' << format_double(p.train_loss) << ',' << format_double(p.validation_loss) << '\n';
    }
  }

  if (config.rl_iterations > 0) {
    if (inputs.rl_maps.empty()) throw ConfigError("rl.iterations > 0 but no rl maps");
    TrainingEnv env;
    for (const auto& grid : inputs.rl_maps) env.maps.emplace_back(grid, config.sampling);
    env.reward = config.reward;
    env.success_bonus = config.success_bonus;
    env.field_inflate = config.field_inflate;
    env.sim = config.sim;

    ValueNets values(config.value_hidden);
    Rng value_rng(stream_seed(config, SeedStream::ValueInit));
    values.initialize(value_rng);

    std::ofstream csv;
    if (write) csv = open_out(out_dir / "iterations.csv"), csv << iteration_csv_header() << '\n';

    std::vector<double> successes;
    std::vector<double> crashes;
    const std::uint64_t rollout_seed = stream_seed(config, SeedStream::Rollout);
    for (int it = 1; it <= config.rl_iterations; ++it) {
      PolicyUpdate update;
      try {
        const RolloutBatch batch = collect_batch(env, result.policy, config.batch_steps, config.episode_cap,
                                                 derive_seed(rollout_seed, {static_cast<std::uint64_t>(it)}));
        update = config.optimizer == Optimizer::Cpo ? cpo_step(result.policy, values, batch, config.trust_region)
                                                    : trpo_step(result.policy, values, batch, config.trust_region);
      } catch (const Error& e) {
        throw IterationError(it, e.kind(), e.what());
      } catch (const std::exception& e) {
        throw IterationError(it, "error", e.what());
      }
      result.policy = std::move(update.policy);

      IterationRow row;
      row.report = update.report;
      row.report.iteration = it;
      successes.push_back(row.report.success_rate);
      crashes.push_back(row.report.crash_rate);
      row.rolling_success = rolling_mean(successes, config.rolling_window).back();
      row.rolling_crash = rolling_mean(crashes, config.rolling_window).back();
      result.iterations.push_back(row);

      if (write) {
        csv << iteration_csv_row(row) << '\n' << std::flush;
        if (config.checkpoint_every > 0 && it % config.checkpoint_every == 0)
          save_checkpoint(result.policy, out_dir / checkpoint_name(it));
      }
      if (callback && !callback(row)) break;
    }
  }

  if (write) save_checkpoint(result.policy, out_dir / "final.rilnet");
  return result;
}

}  // namespace ril
