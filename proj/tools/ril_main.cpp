// Command-line front end: map generation, demonstrations, training,
// evaluation and metrics. Failures print one line
//   error kind=<kind> msg="<message>"
// to stderr and exit with status 1 (2 for usage errors).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ril/common/error.hpp"
#include "ril/common/format.hpp"
#include "ril/harness/config.hpp"
#include "ril/harness/evaluation.hpp"
#include "ril/harness/map_generator.hpp"
#include "ril/harness/training.hpp"
#include "ril/policy/checkpoint.hpp"

namespace fs = std::filesystem;

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

int fail(const std::string& kind, const std::string& message, int code = 1) {
  std::cerr << "error kind=" << kind << " msg=\"" << escape(message) << "\"\n";
  return code;
}

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "experiment config file");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "overrides experiment.seed");
  cmd->add_option("--out", c.out, "output directory")->required();
  cmd->add_flag("--quiet", c.quiet, "no progress output");
}

ril::ExperimentConfig load(const Common& c) {
  ril::ExperimentConfig config = ril::load_config(c.config);
  if (c.seed) config.seed = *c.seed;
  return config;
}

std::vector<std::shared_ptr<const ril::OccupancyGrid>> load_maps(const ril::ExperimentConfig& config,
                                                                 const std::vector<std::string>& paths) {
  std::vector<std::shared_ptr<const ril::OccupancyGrid>> maps;
  for (const auto& p : paths)
    maps.push_back(std::make_shared<const ril::OccupancyGrid>(ril::load_map_file(config.resolve(p))));
  return maps;
}

int train(const Common& c, bool rl, const std::string& demos_path, const std::string& init_path) {
  ril::ExperimentConfig config = load(c);
  if (!rl) config.rl_iterations = 0;
  ril::TrainingInputs inputs = ril::load_training_inputs(config);
  if (!demos_path.empty()) inputs.demos = ril::load_demoset(demos_path);
  if (!init_path.empty()) {
    inputs.initial = ril::load_checkpoint(init_path, config.sim.limits, config.shape);
    config.demos_per_map = 0;
    inputs.demos.reset();
  }
  const auto progress = [&](const ril::IterationRow& row) {
    if (!c.quiet) {
      const auto& r = row.report;
      std::cerr << "iter " << r.iteration << " return " << ril::format_double(r.mean_return) << " success "
                << ril::format_double(r.success_rate) << " crash " << ril::format_double(r.crash_rate) << " jc "
                << ril::format_double(r.jc) << " kl " << ril::format_double(r.kl)
                << (r.step_accepted ? "" : " rejected") << '\n';
    }
    return true;
  };
  const ril::TrainingResult result = ril::run_training(config, inputs, c.out, progress);
  if (!c.quiet && result.il) {
    const auto& last = result.il->curve.back();
    std::cerr << "il: " << result.demo_steps << " demo steps, final train loss " << ril::format_double(last.train_loss)
              << " validation loss " << ril::format_double(last.validation_loss) << '\n';
  }
  std::cout << (fs::path(c.out) / "final.rilnet").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reinforced imitation learning for map-less navigation"};
  app.require_subcommand(1);

  Common common;

  auto* gen_map = app.add_subcommand("gen-map", "generate a procedural RILMAP1 map");
  std::string kind = "simple";
  ril::MapSpec map_spec;
  std::string map_name;
  gen_map->add_option("--kind", kind, "empty | simple | complex | corridor | circle");
  gen_map->add_option("--width", map_spec.width_m, "width in meters");
  gen_map->add_option("--height", map_spec.height_m, "height in meters");
  gen_map->add_option("--resolution", map_spec.resolution, "cell size in meters");
  gen_map->add_option("--obstacles", map_spec.obstacles, "obstacle count (simple/complex)");
  gen_map->add_option("--name", map_name, "map name and file stem (default: kind)");
  gen_map->add_option("--seed", common.seed, "layout seed");
  gen_map->add_option("--out", common.out, "output directory")->required();

  auto* gen_demos = app.add_subcommand("gen-demos", "generate expert demonstrations on the imitation maps");
  add_common(gen_demos, common, true);

  auto* train_il = app.add_subcommand("train-il", "behavior cloning only");
  std::string demos_path;
  add_common(train_il, common, true);
  train_il->add_option("--demos", demos_path, "use an existing RILDEMO1 file")->check(CLI::ExistingFile);

  auto* train_rl = app.add_subcommand("train-rl", "optional behavior cloning, then TRPO/CPO");
  std::string init_path;
  add_common(train_rl, common, true);
  train_rl->add_option("--demos", demos_path, "use an existing RILDEMO1 file")->check(CLI::ExistingFile);
  train_rl->add_option("--init", init_path, "start from this checkpoint, skipping imitation")
      ->check(CLI::ExistingFile);

  auto* evaluate = app.add_subcommand("evaluate", "run the evaluation trials and export trajectories");
  std::string checkpoint;
  std::optional<int> trials;
  add_common(evaluate, common, true);
  evaluate->add_option("--checkpoint", checkpoint, "RILNET1 policy")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--trials", trials, "trials per map (overrides eval.trials)");

  auto* metrics = app.add_subcommand("metrics", "aggregate an evaluation records.csv");
  std::string records_path;
  metrics->add_option("--records", records_path, "records.csv")->required()->check(CLI::ExistingFile);
  metrics->add_option("--out", common.out, "also write metrics.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*gen_map) {
      map_spec.kind = ril::parse_map_kind(kind);
      map_spec.seed = common.seed.value_or(0);
      if (map_name.empty()) map_name = kind;
      const ril::OccupancyGrid grid = ril::generate_map(map_spec, map_name);
      fs::create_directories(common.out);
      const fs::path path = fs::path(common.out) / (map_name + ".rilmap");
      ril::save_map_file(grid, path);
      std::cout << path.string() << '\n';
    } else if (*gen_demos) {
      const ril::ExperimentConfig config = load(common);
      const auto maps = load_maps(config, config.il_maps);
      if (maps.empty()) throw ril::ConfigError("no imitation maps configured");
      const ril::DemoSet demos =
          ril::generate_demoset(maps, config.demos_per_map, ril::stream_seed(config, ril::SeedStream::Demos),
                                config.expert, config.sim);
      fs::create_directories(common.out);
      const fs::path path = fs::path(common.out) / "demos.rildemo";
      ril::save_demoset(demos, path);
      std::cout << path.string() << '\n';
    } else if (*train_il) {
      return train(common, false, demos_path, {});
    } else if (*train_rl) {
      return train(common, true, demos_path, init_path);
    } else if (*evaluate) {
      const ril::ExperimentConfig config = load(common);
      const auto maps = load_maps(config, config.eval_maps);
      if (maps.empty()) throw ril::ConfigError("no evaluation maps configured");
      const ril::GaussianPolicy policy = ril::load_checkpoint(checkpoint, config.sim.limits, config.shape);
      auto records =
          ril::evaluate(policy, maps, trials.value_or(config.eval_trials), config.seed, ril::eval_settings(config));
      ril::export_trajectories(records, common.out,
                               {{"checkpoint", checkpoint}, {"seed", std::to_string(config.seed)},
                                {"model", config.name}});
      const auto pooled = ril::aggregate(records).back();
      std::cout << "success " << ril::format_double(pooled.success_rate) << " timeout "
                << ril::format_double(pooled.timeout_rate) << " crash " << ril::format_double(pooled.crash_rate)
                << " median_lambda_d " << ril::format_double(pooled.median_lambda_d) << '\n';
    } else if (*metrics) {
      const auto records = ril::load_records(records_path);
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& a : ril::aggregate(records)) {
        const auto num = [](double x) {
          return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json();
        };
        out.push_back({{"map", a.map},
                       {"trials", a.trials},
                       {"success_rate", a.success_rate},
                       {"timeout_rate", a.timeout_rate},
                       {"crash_rate", a.crash_rate},
                       {"median_lambda_d", num(a.median_lambda_d)},
                       {"median_lambda_t", num(a.median_lambda_t)}});
      }
      std::cout << out.dump(2) << '\n';
      if (!common.out.empty()) {
        fs::create_directories(common.out);
        std::ofstream(fs::path(common.out) / "metrics.json") << out.dump(2) << '\n';
      }
    }
  } catch (const ril::Error& e) {
    return fail(e.kind(), e.what());
  } catch (const fs::filesystem_error& e) {
    return fail("io", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
