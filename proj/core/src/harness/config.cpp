#include "ril/harness/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ril/common/error.hpp"
#include "ril/common/format.hpp"

namespace ril {
namespace {

struct Field {
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

using FieldTable = std::map<std::string, std::map<std::string, Field>>;

template <typename T>
T parse_value(const std::string& text) {
  std::istringstream in(text);
  T value{};
  std::string trailing;
  if (!(in >> value) || (in >> trailing)) throw ConfigError("cannot parse '" + text + "'");
  return value;
}

std::string trim(std::string s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

Field number(double& ref) {
  return {[&ref](const std::string& s) { ref = parse_value<double>(s); }, [&ref] { return format_double(ref); }};
}
Field integer(int& ref) {
  return {[&ref](const std::string& s) { ref = parse_value<int>(s); }, [&ref] { return std::to_string(ref); }};
}
Field u64(std::uint64_t& ref) {
  return {[&ref](const std::string& s) { ref = parse_value<std::uint64_t>(s); }, [&ref] { return std::to_string(ref); }};
}
Field text(std::string& ref) {
  return {[&ref](const std::string& s) { ref = s; }, [&ref] { return ref; }};
}
Field list(std::vector<std::string>& ref) {
  return {[&ref](const std::string& s) { ref = split_list(s); }, [&ref] { return join_list(ref); }};
}

// Section/key layout of the config file, bound to the fields of `c`.
FieldTable field_table(ExperimentConfig& c) {
  FieldTable t;
  t["experiment"] = {
      {"name", text(c.name)},
      {"seed", u64(c.seed)},
  };
  t["world"] = {
      {"dt", number(c.sim.dt)},
      {"substeps", integer(c.sim.substeps)},
      {"robot_radius", number(c.sim.robot_radius)},
      {"goal_radius", number(c.sim.goal_radius)},
      {"v_max", number(c.sim.limits.v_max)},
      {"omega_max", number(c.sim.limits.omega_max)},
      {"lidar_beams", integer(c.sim.lidar.beams)},
      {"lidar_fov", number(c.sim.lidar.fov)},
      {"lidar_max_range", number(c.sim.lidar.max_range)},
      {"lidar_noise_std", number(c.sim.lidar.noise_std)},
  };
  t["policy"] = {
      {"hidden1", integer(c.shape.hidden1)},
      {"hidden2", integer(c.shape.hidden2)},
      {"dropout_rate", number(c.dropout_rate)},
  };
  t["reward"] = {
      {"variant",
       {[&c](const std::string& s) { c.reward = parse_reward_variant(s); },
        [&c] { return std::string(to_string(c.reward)); }}},
      {"success_bonus", number(c.success_bonus)},
      {"field_inflate", number(c.field_inflate)},
      {"gamma", number(c.trust_region.gamma)},
      {"gamma_cost", number(c.trust_region.gamma_cost)},
  };
  t["sampling"] = {
      {"clearance", number(c.sampling.clearance)},
      {"min_distance", number(c.sampling.min_distance)},
      {"max_attempts", integer(c.sampling.max_attempts)},
  };
  t["expert"] = {
      {"lookahead", number(c.expert.gains.lookahead)},
      {"k_omega", number(c.expert.gains.k_omega)},
      {"clearance", number(c.expert.sampling.clearance)},
      {"min_distance", number(c.expert.sampling.min_distance)},
      {"step_cap", integer(c.expert.step_cap)},
      {"retry_factor", integer(c.expert.retry_factor)},
  };
  t["imitation"] = {
      {"maps", list(c.il_maps)},
      {"demos_per_map", integer(c.demos_per_map)},
      {"learning_rate", number(c.il.learning_rate)},
      {"momentum", number(c.il.momentum)},
      {"minibatch", integer(c.il.minibatch)},
      {"iterations", integer(c.il.iterations)},
      {"validation_fraction", number(c.il.validation_fraction)},
      {"eval_interval", integer(c.il.eval_interval)},
  };
  t["rl"] = {
      {"maps", list(c.rl_maps)},
      {"optimizer",
       {[&c](const std::string& s) { c.optimizer = parse_optimizer(s); },
        [&c] { return std::string(to_string(c.optimizer)); }}},
      {"alpha", number(c.trust_region.alpha)},
      {"collision_penalty", number(c.trust_region.collision_penalty)},
      {"kl_step", number(c.trust_region.kl_step)},
      {"cg_iterations", integer(c.trust_region.cg_iterations)},
      {"cg_damping", number(c.trust_region.cg_damping)},
      {"backtrack", number(c.trust_region.backtrack)},
      {"max_backtracks", integer(c.trust_region.max_backtracks)},
      {"gae_lambda", number(c.trust_region.gae_lambda)},
      {"value_steps", integer(c.trust_region.value_steps)},
      {"value_lr", number(c.trust_region.value_lr)},
      {"value_hidden", integer(c.value_hidden)},
      {"batch_steps", integer(c.batch_steps)},
      {"episode_cap", integer(c.episode_cap)},
      {"iterations", integer(c.rl_iterations)},
      {"checkpoint_every", integer(c.checkpoint_every)},
      {"rolling_window", integer(c.rolling_window)},
  };
  t["eval"] = {
      {"maps", list(c.eval_maps)},
      {"trials", integer(c.eval_trials)},
      {"timeout_steps", integer(c.eval_timeout_steps)},
  };
  return t;
}

void validate(const ExperimentConfig& c) {
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(c.sim.dt > 0.0, "world.dt must be > 0");
  require(c.sim.substeps >= 1, "world.substeps must be >= 1");
  require(c.sim.robot_radius > 0.0, "world.robot_radius must be > 0");
  require(c.sim.limits.v_max > 0.0 && c.sim.limits.omega_max > 0.0, "command limits must be > 0");
  require(c.sim.lidar.beams == kPooledBeams * kPoolKernel, "world.lidar_beams must be 1080");
  require(c.sim.lidar.max_range > 0.0, "world.lidar_max_range must be > 0");
  require(c.shape.hidden1 >= 1 && c.shape.hidden2 >= 1, "policy hidden sizes must be >= 1");
  require(c.dropout_rate >= 0.0 && c.dropout_rate < 1.0, "policy.dropout_rate must be in [0, 1)");
  require(c.trust_region.gamma >= 0.0 && c.trust_region.gamma <= 1.0, "reward.gamma must be in [0, 1]");
  require(c.trust_region.gamma_cost > 0.0 && c.trust_region.gamma_cost < 1.0, "reward.gamma_cost must be in (0, 1)");
  require(c.trust_region.alpha > 0.0, "rl.alpha must be > 0");
  require(c.trust_region.kl_step > 0.0, "rl.kl_step must be > 0");
  require(c.demos_per_map >= 0, "imitation.demos_per_map must be >= 0");
  require(c.il.iterations >= 1, "imitation.iterations must be >= 1");
  require(c.il.validation_fraction >= 0.0 && c.il.validation_fraction < 1.0,
          "imitation.validation_fraction must be in [0, 1)");
  require(c.rl_iterations >= 0, "rl.iterations must be >= 0");
  require(c.episode_cap >= 1 && c.batch_steps >= c.episode_cap, "rl.batch_steps must be >= rl.episode_cap >= 1");
  require(c.eval_trials >= 1 && c.eval_timeout_steps >= 1, "eval trials and timeout must be >= 1");
  require(c.rolling_window >= 1, "rl.rolling_window must be >= 1");
}

}  // namespace

std::string_view to_string(Optimizer optimizer) { return optimizer == Optimizer::Cpo ? "cpo" : "trpo"; }

Optimizer parse_optimizer(std::string_view text) {
  if (text == "cpo") return Optimizer::Cpo;
  if (text == "trpo") return Optimizer::Trpo;
  throw ConfigError("unknown optimizer '" + std::string(text) + "'");
}

std::filesystem::path ExperimentConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }

  ExperimentConfig config;
  config.base_dir = base_dir;
  FieldTable table = field_table(config);
  for (const auto& [section, entries] : tree) {
    const auto sec = table.find(section);
    if (sec == table.end()) throw ConfigError("unknown section [" + section + "]");
    if (entries.empty() && !entries.data().empty()) throw ConfigError("key '" + section + "' outside a section");
    for (const auto& [key, value] : entries) {
      const auto field = sec->second.find(key);
      if (field == sec->second.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      try {
        field->second.set(trim(value.data()));
      } catch (const ConfigError& e) {
        throw ConfigError("[" + section + "] " + key + ": " + e.what());
      }
    }
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

std::string to_ini(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  const FieldTable table = field_table(copy);
  static const char* kOrder[] = {"experiment", "world", "policy", "reward", "sampling",
                                 "expert",     "imitation", "rl", "eval"};
  std::ostringstream out;
  for (const char* section : kOrder) {
    out << '[' << section << "]\n";
    for (const auto& [key, field] : table.at(section)) out << key << " = " << field.get() << '\n';
    out << '\n';
  }
  return out.str();
}

}  // namespace ril
