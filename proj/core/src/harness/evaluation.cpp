#include "ril/harness/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "ril/common/error.hpp"
#include "ril/common/format.hpp"
#include "ril/common/random.hpp"
#include "ril/expert/planner.hpp"
#include "ril/observation.hpp"
#include "ril/reward/reward.hpp"
#include "ril/world/lidar.hpp"

namespace ril {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string trajectory_name(const EvalRecord& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "traj_m%02d_t%04d.csv", r.map_index, r.trial);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

nlohmann::ordered_json to_json(const EvalAggregate& a) {
  const auto num = [](double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(); };
  return {{"map", a.map},
          {"trials", a.trials},
          {"successes", a.successes},
          {"timeouts", a.timeouts},
          {"crashes", a.crashes},
          {"success_rate", a.success_rate},
          {"timeout_rate", a.timeout_rate},
          {"crash_rate", a.crash_rate},
          {"metric_count", a.metric_count},
          {"median_lambda_d", num(a.median_lambda_d)},
          {"median_lambda_t", num(a.median_lambda_t)},
          {"mean_lambda_d", num(a.mean_lambda_d)},
          {"mean_lambda_t", num(a.mean_lambda_t)}};
}

constexpr const char* kRecordHeader =
    "map,map_index,trial,start_x,start_y,start_theta,goal_x,goal_y,goal_theta,outcome,steps,path_length,"
    "lambda_d,lambda_t,trajectory_file";

double parse_double(const std::string& s) {
  if (s == "nan") return kNaN;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParseError("bad number '" + s + "'");
  return v;
}

}  // namespace

std::string_view to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::Success: return "success";
    case TrialOutcome::Timeout: return "timeout";
    case TrialOutcome::Crash: return "crash";
  }
  return "unknown";
}

TrialOutcome parse_trial_outcome(std::string_view text) {
  for (TrialOutcome o : {TrialOutcome::Success, TrialOutcome::Timeout, TrialOutcome::Crash})
    if (text == to_string(o)) return o;
  throw ParseError("unknown trial outcome '" + std::string(text) + "'");
}

EvalSettings eval_settings(const ExperimentConfig& config) {
  EvalSettings s;
  s.sim = config.sim;
  s.sampling = config.sampling;
  s.timeout_steps = config.eval_timeout_steps;
  s.reward = config.reward;
  s.success_bonus = config.success_bonus;
  s.field_inflate = config.field_inflate;
  return s;
}

std::vector<EvalTrial> evaluation_trials(std::span<const std::shared_ptr<const OccupancyGrid>> maps,
                                         int trials_per_map, std::uint64_t seed,
                                         const EpisodeSamplerConfig& sampling) {
  std::vector<EvalTrial> trials;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const EpisodeSampler sampler(maps[m], sampling);
    for (int k = 0; k < trials_per_map; ++k) {
      Rng rng = make_rng(seed, {m, static_cast<std::uint64_t>(k)});
      trials.push_back({static_cast<int>(m), k, sampler.sample(rng)});
    }
  }
  return trials;
}

EvalRecord run_trial(const GaussianPolicy& policy, const OccupancyGrid& grid, const EvalTrial& trial,
                     const EvalSettings& settings, std::uint64_t seed) {
  EvalRecord rec;
  rec.map = grid.name();
  rec.map_index = trial.map_index;
  rec.trial = trial.trial;
  rec.start = trial.pair.start;
  rec.goal = trial.pair.goal;
  rec.lambda_d = rec.lambda_t = kNaN;

  const RewardSpec spec =
      make_reward_spec(settings.reward, grid, rec.goal, settings.field_inflate, settings.success_bonus);
  const bool noisy = settings.sim.lidar.noise_std > 0.0;
  Rng noise = make_rng(seed, {static_cast<std::uint64_t>(trial.map_index), static_cast<std::uint64_t>(trial.trial), 1});

  Pose pose = rec.start;
  LidarScan current = noisy ? scan(grid, pose, settings.sim.lidar, noise) : scan(grid, pose, settings.sim.lidar);
  double d_prev = d_of_state(spec, pose);
  rec.outcome = TrialOutcome::Timeout;
  for (int t = 1; t <= settings.timeout_steps; ++t) {
    const Observation obs = build_observation(current, pose, rec.goal);
    const auto mean_action = policy.forward(obs, PolicyMode::Eval).mean;
    StepOutcome out = step(grid, pose, {mean_action[0], mean_action[1]}, rec.goal, settings.sim,
                           noisy ? &noise : nullptr);
    const double d_now = d_of_state(spec, out.pose);
    double r = 0.0;
    if (out.reached_goal) {
      r = spec.success_bonus;
    } else if (std::isfinite(d_now) && std::isfinite(d_prev)) {
      r = -(d_now - d_prev);
    }
    rec.trajectory.push_back({t, out.pose, out.applied, r, cost(out.crashed)});
    rec.path_length += distance(pose, out.pose);
    rec.steps = t;
    pose = out.pose;
    d_prev = d_now;
    current = std::move(out.scan);
    if (out.crashed) {
      rec.outcome = TrialOutcome::Crash;
      break;
    }
    if (out.reached_goal) {
      rec.outcome = TrialOutcome::Success;
      break;
    }
  }
  return rec;
}

std::vector<EvalRecord> evaluate(const GaussianPolicy& policy,
                                 std::span<const std::shared_ptr<const OccupancyGrid>> maps, int trials_per_map,
                                 std::uint64_t seed, const EvalSettings& settings) {
  std::vector<EvalRecord> records;
  for (const EvalTrial& trial : evaluation_trials(maps, trials_per_map, seed, settings.sampling)) {
    const OccupancyGrid& grid = *maps[trial.map_index];
    EvalRecord rec = run_trial(policy, grid, trial, settings, seed);
    if (const auto metrics = planner_relative_metrics(rec, grid, settings)) {
      rec.lambda_d = metrics->lambda_d;
      rec.lambda_t = metrics->lambda_t;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::optional<RelativeMetrics> planner_relative_metrics(const EvalRecord& record, const OccupancyGrid& grid,
                                                        const EvalSettings& settings) {
  if (record.outcome != TrialOutcome::Success) return std::nullopt;
  std::vector<Point2> plan;
  try {
    plan = plan_path(grid, record.start, record.goal, settings.sim.robot_radius);
  } catch (const GeometryError&) {
    return std::nullopt;
  }
  // The planner, like the policy, is done on entering the goal disc.
  const double planned = path_length(plan) - settings.sim.goal_radius;
  if (!(planned > 0.0)) return std::nullopt;
  const double planner_steps = planned / (settings.sim.limits.v_max * settings.sim.dt);
  return RelativeMetrics{record.path_length / planned, record.steps / planner_steps, planned};
}

std::vector<EvalAggregate> aggregate(std::span<const EvalRecord> records) {
  std::vector<std::string> order;
  for (const auto& r : records)
    if (std::find(order.begin(), order.end(), r.map) == order.end()) order.push_back(r.map);

  const auto build = [&](const std::string& name, bool all) {
    EvalAggregate a;
    a.map = all ? "all" : name;
    std::vector<double> ld;
    std::vector<double> lt;
    for (const auto& r : records) {
      if (!all && r.map != name) continue;
      ++a.trials;
      a.successes += r.outcome == TrialOutcome::Success;
      a.timeouts += r.outcome == TrialOutcome::Timeout;
      a.crashes += r.outcome == TrialOutcome::Crash;
      if (r.outcome == TrialOutcome::Success && std::isfinite(r.lambda_d)) {
        ld.push_back(r.lambda_d);
        lt.push_back(r.lambda_t);
      }
    }
    if (a.trials > 0) {
      a.success_rate = static_cast<double>(a.successes) / a.trials;
      a.timeout_rate = static_cast<double>(a.timeouts) / a.trials;
      a.crash_rate = static_cast<double>(a.crashes) / a.trials;
    }
    a.metric_count = static_cast<int>(ld.size());
    a.median_lambda_d = median(ld);
    a.median_lambda_t = median(lt);
    a.mean_lambda_d = mean(ld);
    a.mean_lambda_t = mean(lt);
    return a;
  };

  std::vector<EvalAggregate> out;
  for (const auto& name : order) out.push_back(build(name, false));
  out.push_back(build({}, true));
  return out;
}

void export_trajectories(std::span<EvalRecord> records, const std::filesystem::path& directory,
                         const std::map<std::string, std::string>& metadata) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory.string() + "': " + ec.message());

  for (EvalRecord& r : records) {
    r.trajectory_file = trajectory_name(r);
    auto out = open_out(directory / r.trajectory_file);
    out << "t,x,y,theta,v,omega,reward,cost\n";
    for (const auto& s : r.trajectory) {
      out << s.t << ',' << format_double(s.pose.x) << ',' << format_double(s.pose.y) << ','
          << format_double(s.pose.theta) << ',' << format_double(s.command.v) << ',' << format_double(s.command.omega)
          << ',' << format_double(s.reward) << ',' << format_double(s.cost) << '\n';
    }
  }

  auto csv = open_out(directory / "records.csv");
  csv << kRecordHeader << '\n';
  for (const EvalRecord& r : records) {
    csv << r.map << ',' << r.map_index << ',' << r.trial << ',' << format_double(r.start.x) << ','
        << format_double(r.start.y) << ',' << format_double(r.start.theta) << ',' << format_double(r.goal.x) << ','
        << format_double(r.goal.y) << ',' << format_double(r.goal.theta) << ',' << to_string(r.outcome) << ','
        << r.steps << ',' << format_double(r.path_length) << ',' << format_double(r.lambda_d) << ','
        << format_double(r.lambda_t) << ',' << r.trajectory_file << '\n';
  }

  nlohmann::ordered_json summary;
  for (const auto& [k, v] : metadata) summary["metadata"][k] = v;
  summary["aggregates"] = nlohmann::ordered_json::array();
  for (const auto& a : aggregate(records)) summary["aggregates"].push_back(to_json(a));
  open_out(directory / "summary.json") << summary.dump(2) << '\n';
}

std::vector<EvalRecord> load_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader) throw ParseError(path.string() + ": bad records header");
  std::vector<EvalRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 15) throw ParseError("line " + std::to_string(line_no) + ": expected 15 fields");
    try {
      EvalRecord r;
      r.map = f[0];
      r.map_index = std::stoi(f[1]);
      r.trial = std::stoi(f[2]);
      r.start = {parse_double(f[3]), parse_double(f[4]), parse_double(f[5])};
      r.goal = {parse_double(f[6]), parse_double(f[7]), parse_double(f[8])};
      r.outcome = parse_trial_outcome(f[9]);
      r.steps = std::stoi(f[10]);
      r.path_length = parse_double(f[11]);
      r.lambda_d = parse_double(f[12]);
      r.lambda_t = parse_double(f[13]);
      r.trajectory_file = f[14];
      records.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad integer field");
    }
  }
  return records;
}

}  // namespace ril
