// Acceptance suite: one PASS/FAIL line per criterion. Exit status is zero
// only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "ril/expert/demoset.hpp"
#include "ril/harness/evaluation.hpp"
#include "ril/harness/map_generator.hpp"
#include "ril/harness/training.hpp"
#include "ril/imitation/behavior_cloning.hpp"
#include "ril/observation.hpp"
#include "ril/policy/checkpoint.hpp"
#include "ril/reward/distance_field.hpp"
#include "ril/rl/trust_region.hpp"
#include "ril/rl/value_function.hpp"
#include "ril/world/free_space.hpp"

using namespace ril;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Eigen::MatrixXd random_obs(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd obs(kObservationSize, n);
  for (Eigen::Index i = 0; i < obs.size(); ++i) obs.data()[i] = u(rng);
  return obs;
}

GaussianPolicy generic_policy(PolicyShape shape, std::uint64_t seed, CommandLimits limits = {}) {
  GaussianPolicy p(shape, limits);
  Rng rng(seed);
  p.initialize(rng);
  std::normal_distribution<double> n(0.0, 0.3);
  Eigen::VectorXd flat = p.flat_params();
  for (Eigen::Index i = 0; i < flat.size(); ++i) flat[i] += n(rng);
  p.set_flat_params(flat);
  return p;
}

GaussianPolicy with_params(const GaussianPolicy& p, const Eigen::VectorXd& x) {
  GaussianPolicy q = p;
  q.set_flat_params(x);
  return q;
}

// --- 1 -------------------------------------------------------------------

Verdict dijkstra_vs_bellman_ford() {
  Rng rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  int mismatched = 0;
  std::size_t cells = 0;
  for (int m = 0; m < 50; ++m) {
    const OccupancyGrid g = oracle::random_grid(30, 30, 0.1, 0.25, rng);
    const double inflate = (m % 3) * 0.06;
    const auto blocked = oracle::blocked_mask(g, inflate);
    std::vector<int> free;
    for (int i = 0; i < 900; ++i)
      if (!blocked[i]) free.push_back(i);
    const int pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    const CellIndex goal{pick % 30, pick / 30};
    const Point2 c = g.cell_center(goal);
    const auto field = dijkstra_field(g, Pose(c.x, c.y, 0.0), inflate);
    const auto ref = oracle::bellman_ford(blocked, 30, 30, 0.1, goal);
    if (field.values() != ref) ++mismatched;
    cells += ref.size();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {mismatched == 0 && secs < 5.0,
          fmt("%d/50 maps differ (%zu cells compared, exact equality), %.2f s of 5 s", mismatched, cells, secs)};
}

// --- 2 -------------------------------------------------------------------

Verdict pooling_and_normalization() {
  Rng rng(202);
  std::uniform_real_distribution<double> range(0.0, 30.0);
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (int n = 0; n < 1000; ++n) {
    std::vector<double> r(1080);
    for (double& x : r) x = range(rng);
    const auto pooled = min_pool(r);
    for (int w = 0; w < 36; ++w) {
      const double ref = *std::min_element(r.begin() + w * 30, r.begin() + (w + 1) * 30);
      if (pooled[w] != ref) ++bad;
      if (normalize_range(ref) != 2.0 * (1.0 - std::min(ref, 30.0) / 30.0) - 1.0) ++bad;
    }
  }
  const bool anchors = normalize_range(30.0) == -1.0 && normalize_range(0.0) == 1.0 && normalize_range(15.0) == 0.0;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && anchors && secs < 1.0,
          fmt("%d mismatches over 1000 scans, anchors(30,0,15)=(%g,%g,%g), %.3f s of 1 s", bad, normalize_range(30.0),
              normalize_range(0.0), normalize_range(15.0), secs)};
}

// --- 3 -------------------------------------------------------------------

Verdict analytic_gradients() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(303);
  double bc = 0.0;
  double surrogate = 0.0;
  double value = 0.0;
  double log_std = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GaussianPolicy p = generic_policy({12, 10}, 1000 + k);
    const Eigen::VectorXd x = p.flat_params();
    const Eigen::MatrixXd obs = random_obs(8, rng);

    Eigen::Matrix2Xd cmd(2, 8);
    cmd.row(0) = 0.25 * (Eigen::RowVectorXd::Random(8).array() + 1.0).matrix();
    cmd.row(1) = Eigen::RowVectorXd::Random(8);
    const Eigen::MatrixXd mask = p.sample_dropout_mask(8, rng);
    const auto g_bc = bc_loss_gradient(p, obs, cmd, &mask);
    bc = std::max(bc, oracle::max_relative_error(g_bc.gradient, oracle::numeric_gradient([&](const Eigen::VectorXd& v) {
                                                   return bc_loss(with_params(p, v), obs, cmd, &mask);
                                                 }, x)));

    const GaussianPolicy behavior = generic_policy({12, 10}, 5000 + k);
    Eigen::Matrix2Xd actions(2, 8);
    std::vector<double> weights(8);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int j = 0; j < 8; ++j) {
      Observation o;
      for (int i = 0; i < kObservationSize; ++i) o.values[i] = obs(i, j);
      const auto a = sample_action(behavior.forward(o), rng);
      actions.col(j) << a[0], a[1];
      weights[j] = n(rng) / 8.0;
    }
    const auto old_lp = batch_log_probs(behavior, obs, actions);
    const auto g_s = weighted_surrogate(p, obs, actions, old_lp, weights);
    const Eigen::VectorXd num_s = oracle::numeric_gradient(
        [&](const Eigen::VectorXd& v) { return weighted_surrogate(with_params(p, v), obs, actions, old_lp, weights).value; },
        x);
    surrogate = std::max(surrogate, oracle::max_relative_error(g_s.gradient, num_s));
    log_std = std::max(log_std, oracle::max_relative_error(g_s.gradient.tail(2), num_s.tail(2)));

    ValueFunction vf(10);
    Rng vr(7000 + k);
    vf.initialize(vr);
    std::vector<double> targets(8);
    for (auto& t : targets) t = n(rng);
    const auto g_v = vf.loss_gradient(obs, targets);
    value = std::max(value, oracle::max_relative_error(g_v.gradient, oracle::numeric_gradient([&](const Eigen::VectorXd& v) {
                                                          ValueFunction q = vf;
                                                          q.network().set_flat(v);
                                                          return q.loss_gradient(obs, targets).value;
                                                        }, vf.network().flat())));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double worst = std::max({bc, surrogate, value, log_std});
  return {worst < 1e-4 && secs < 30.0,
          fmt("max rel err over 20 points: bc %.1e, surrogate %.1e, value %.1e, log_std %.1e (< 1e-4), %.1f s", bc,
              surrogate, value, log_std, secs)};
}

// --- 4 -------------------------------------------------------------------

Verdict fisher_vector_product() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(404);
  const GaussianPolicy p = generic_policy({4, 4}, 44);
  const Eigen::MatrixXd obs = random_obs(6, rng);
  const Eigen::Index n = p.parameter_count();
  const Eigen::MatrixXd h = oracle::numeric_hessian(
      [&](const Eigen::VectorXd& x) { return kl_mean(p, with_params(p, x), obs); }, p.flat_params());
  Eigen::MatrixXd f(n, n);
  for (Eigen::Index j = 0; j < n; ++j) f.col(j) = p.fisher_vector_product(obs, Eigen::VectorXd::Unit(n, j), 0.0);
  const double rel = (f - h).norm() / h.norm();
  const double self = kl_mean(p, p, obs);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {rel < 1e-3 && self == 0.0 && secs < 30.0,
          fmt("%ldx%ld Fisher vs FD KL Hessian rel err %.2e (< 1e-3), KL(p||p) = %g, %.1f s", static_cast<long>(n),
              static_cast<long>(n), rel, self, secs)};
}

// --- 5 -------------------------------------------------------------------

TrainingEnv toy_env() {
  MapSpec spec;
  spec.kind = MapKind::Simple;
  spec.width_m = spec.height_m = 4.0;
  spec.obstacles = 2;
  spec.seed = 5;
  TrainingEnv env;
  env.maps.emplace_back(std::make_shared<const OccupancyGrid>(generate_map(spec, "toy")), EpisodeSamplerConfig{});
  return env;
}

Verdict trust_region_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const TrainingEnv env = toy_env();
  TrustRegionConfig cfg;
  cfg.value_steps = 20;
  int accepted = 0;
  int violations = 0;
  double worst = 0.0;
  for (Optimizer opt : {Optimizer::Trpo, Optimizer::Cpo}) {
    GaussianPolicy policy({32, 32}, CommandLimits{});
    Rng rng(55);
    policy.initialize(rng);
    ValueNets values(16);
    values.initialize(rng);
    for (int it = 0; it < 50; ++it) {
      const RolloutBatch batch = collect_batch(env, policy, 1000, 50, derive_seed(505, {static_cast<std::uint64_t>(it)}));
      const PolicyUpdate u = opt == Optimizer::Cpo ? cpo_step(policy, values, batch, cfg) : trpo_step(policy, values, batch, cfg);
      if (u.report.step_accepted) {
        ++accepted;
        const double kl = kl_mean(policy, u.policy, batch.observations);
        worst = std::max(worst, kl);
        if (kl > cfg.kl_step) ++violations;
      }
      policy = u.policy;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {violations == 0 && accepted > 0,
          fmt("%d accepted TRPO+CPO steps over 2x50 iterations, %d with KL > 0.01, max KL %.5f, %.0f s", accepted,
              violations, worst, secs)};
}

// --- 6 -------------------------------------------------------------------

struct BanditRun {
  double jc = 0.0;      ///< exact P(omega > 1) of the final policy
  double reward = 0.0;  ///< exact expected omega of the final policy
};

BanditRun run_bandit(Optimizer opt, double penalty, std::uint64_t seed, int iterations, int batch) {
  constexpr double kLimit = 1.0;
  const CommandLimits limits{0.5, 2.0};
  GaussianPolicy policy({8, 8}, limits);
  Rng rng(seed);
  policy.initialize(rng);
  policy.set_log_std(Eigen::Vector2d(std::log(0.1), std::log(0.3)));
  ValueNets values(8);
  values.initialize(rng);
  TrustRegionConfig cfg;
  cfg.alpha = 0.1;
  cfg.collision_penalty = penalty;
  cfg.value_steps = 20;
  const oracle::Bandit bandit{[](double a) { return a; }, [](double a) { return a > kLimit ? 1.0 : 0.0; }};
  for (int it = 0; it < iterations; ++it) {
    const RolloutBatch b = oracle::bandit_batch(policy, bandit, batch, derive_seed(seed, {static_cast<std::uint64_t>(it)}));
    policy = (opt == Optimizer::Cpo ? cpo_step(policy, values, b, cfg) : trpo_step(policy, values, b, cfg)).policy;
  }
  const auto [mu, sigma] = oracle::bandit_omega(policy);
  return {1.0 - oracle::normal_cdf((kLimit - mu) / sigma), mu};
}

Verdict constrained_bandit(int iterations, int batch) {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const BanditRun cpo = run_bandit(Optimizer::Cpo, 0.0, seed, iterations, batch);
    const BanditRun low = run_bandit(Optimizer::Trpo, 0.1, seed, iterations, batch);
    const BanditRun high = run_bandit(Optimizer::Trpo, 1.0, seed, iterations, batch);
    const bool pass = std::abs(cpo.jc - 0.1) <= 0.01 && low.jc > 0.1 && high.reward < cpo.reward;
    ok += pass;
    per_seed += fmt(" [s%d %s cpo J_C %.4f R %.3f | w0.1 J_C %.3f | w1 J_C %.4f R %.3f]", static_cast<int>(seed),
                    pass ? "ok" : "no", cpo.jc, cpo.reward, low.jc, high.jc, high.reward);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok >= 4 && secs < 300.0, fmt("%d/5 seeds ordered (need 4), %.0f s;", ok, secs) + per_seed};
}

// --- shared training setup for 7-9 ----------------------------------------

std::shared_ptr<const OccupancyGrid> make_map(std::uint64_t seed, const std::string& name) {
  MapSpec spec;
  spec.kind = MapKind::Simple;
  spec.width_m = spec.height_m = 6.0;
  spec.obstacles = 3;
  spec.seed = seed;
  return std::make_shared<const OccupancyGrid>(generate_map(spec, name));
}

const std::shared_ptr<const OccupancyGrid>& training_map() {
  static const auto map = make_map(3, "train6");
  return map;
}

ExperimentConfig training_config(std::uint64_t seed, int demos, RewardVariant reward) {
  ExperimentConfig c;
  c.name = fmt("seed%d_demos%d_%s", static_cast<int>(seed), demos, std::string(to_string(reward)).c_str());
  c.seed = seed;
  c.reward = reward;
  c.demos_per_map = demos;
  c.il.iterations = 20000;
  c.batch_steps = 4000;
  c.episode_cap = 200;
  c.checkpoint_every = 1000;
  return c;
}

TrainingInputs training_inputs() {
  TrainingInputs in;
  in.il_maps = {training_map()};
  in.rl_maps = {training_map()};
  return in;
}

/// First iteration (1-based) whose rolling success reaches `level`, or 0.
int first_reaching(const std::vector<IterationRow>& rows, double level) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].rolling_success >= level) return static_cast<int>(i + 1);
  return 0;
}

TrainingResult train_until(const ExperimentConfig& config, const fs::path& out, double level) {
  return run_training(config, training_inputs(), out,
                      [level](const IterationRow& row) { return row.rolling_success < level; });
}

// --- 7 -------------------------------------------------------------------

Verdict sample_efficiency(const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kLevel = 0.7;
  constexpr int kRilBudget = 30;
  int ok = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ExperimentConfig ril = training_config(seed, 50, RewardVariant::ShortestPath);
    ril.rl_iterations = kRilBudget;
    const TrainingResult a = train_until(ril, work / fmt("c7_ril_seed%d", static_cast<int>(seed)), kLevel);
    const int k = first_reaching(a.iterations, kLevel);

    ExperimentConfig scratch = training_config(seed, 0, RewardVariant::ShortestPath);
    scratch.rl_iterations = std::max(3 * std::max(k, 1), 20);
    const TrainingResult b = train_until(scratch, work / fmt("c7_cpo_seed%d", static_cast<int>(seed)), kLevel);
    const int reach = first_reaching(b.iterations, kLevel);
    const bool pass = k > 0 && (reach == 0 || reach >= 3 * k);
    ok += pass;
    per_seed += fmt(" [s%d %s R-IL K=%d (rolling %.2f) | CPO %s within %zu it, rolling %.2f]", static_cast<int>(seed),
                    pass ? "ok" : "no", k, a.iterations.empty() ? 0.0 : a.iterations.back().rolling_success,
                    reach ? fmt("reached at %d", reach).c_str() : "not reached", b.iterations.size(),
                    b.iterations.empty() ? 0.0 : b.iterations.back().rolling_success);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok >= 2 && secs < 7200.0, fmt("%d/3 seeds with CPO >= 3K (need 2), %.0f s;", ok, secs) + per_seed};
}

// --- 8 -------------------------------------------------------------------

Verdict sparse_contrast(const fs::path& work, int budget) {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ExperimentConfig scratch = training_config(seed, 0, RewardVariant::Sparse);
    scratch.rl_iterations = budget;
    const TrainingResult a = run_training(scratch, training_inputs(), work / fmt("c8_cpo_seed%d", static_cast<int>(seed)));
    ExperimentConfig demos = training_config(seed, 10, RewardVariant::Sparse);
    demos.rl_iterations = budget;
    const TrainingResult b = run_training(demos, training_inputs(), work / fmt("c8_s10_seed%d", static_cast<int>(seed)));
    const double ra = a.iterations.back().rolling_success;
    const double rb = b.iterations.back().rolling_success;
    const bool pass = ra < 0.2 && rb > 0.6;
    ok += pass;
    per_seed += fmt(" [s%d %s scratch %.3f | 10 demos %.3f]", static_cast<int>(seed), pass ? "ok" : "no", ra, rb);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok >= 2 && secs < 7200.0,
          fmt("%d/3 seeds (need 2), rolling success after %d iterations: scratch < 0.2, 10 demos > 0.6, %.0f s;", ok,
              budget, secs) +
              per_seed};
}

// --- 9 -------------------------------------------------------------------

Verdict evaluation_protocol(const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = work / "c7_ril_seed1";
  if (!fs::exists(dir / "final.rilnet")) {
    ExperimentConfig c = training_config(1, 50, RewardVariant::ShortestPath);
    c.rl_iterations = 5;
    run_training(c, training_inputs(), dir);
  }
  const ExperimentConfig config = training_config(1, 50, RewardVariant::ShortestPath);
  const EvalSettings settings = eval_settings(config);
  const GaussianPolicy ril = load_checkpoint(dir / "final.rilnet", settings.sim.limits);
  const GaussianPolicy il = load_checkpoint(dir / "il.rilnet", settings.sim.limits);

  const auto eval_map = make_map(11, "eval6");
  if (to_text(*eval_map) == to_text(*training_map())) return {false, "evaluation map equals the training map"};
  const std::vector<std::shared_ptr<const OccupancyGrid>> maps{eval_map};
  auto a = evaluate(ril, maps, 100, 9, settings);
  const auto b = evaluate(il, maps, 100, 9, settings);
  export_trajectories(a, work / "c9_eval", {{"checkpoint", (dir / "final.rilnet").string()}});

  bool same_trials = a.size() == 100 && b.size() == 100;
  for (std::size_t i = 0; same_trials && i < a.size(); ++i) {
    same_trials = a[i].start.x == b[i].start.x && a[i].start.y == b[i].start.y &&
                  a[i].start.theta == b[i].start.theta && a[i].goal.x == b[i].goal.x && a[i].goal.y == b[i].goal.y;
  }
  const EvalAggregate ga = aggregate(a).back();
  const EvalAggregate gb = aggregate(b).back();
  const bool partition = ga.successes + ga.timeouts + ga.crashes == 100 && gb.successes + gb.timeouts + gb.crashes == 100;

  // Smoke trial: open room, goal 1 m straight ahead.
  const OccupancyGrid room = oracle::open_room(40);
  const EvalTrial smoke{0, 0, {Pose{1.5, 2.0, 0.0}, Pose{2.5, 2.0, 0.0}}};
  const EvalRecord smoke_rec = run_trial(ril, room, smoke, settings);

  const bool lambda_ok = ga.metric_count > 0 && ga.median_lambda_d <= 1.5;
  double min_lambda = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : a)
    if (r.outcome == TrialOutcome::Success && !(r.lambda_d >= min_lambda)) min_lambda = r.lambda_d;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {partition && same_trials && lambda_ok && smoke_rec.outcome == TrialOutcome::Success,
          fmt("R-IL success/timeout/crash %d/%d/%d, IL-only %d/%d/%d, identical trial lists: %s, "
              "median lambda_d %.3f over %d successes (<= 1.5), min %.3f, median lambda_t %.3f, smoke trial %s, %.0f s",
              ga.successes, ga.timeouts, ga.crashes, gb.successes, gb.timeouts, gb.crashes, same_trials ? "yes" : "no",
              ga.median_lambda_d, ga.metric_count, min_lambda, ga.median_lambda_t,
              std::string(to_string(smoke_rec.outcome)).c_str(), secs)};
}

// --- 10 ------------------------------------------------------------------

Verdict telescoping() {
  const auto t0 = std::chrono::steady_clock::now();
  int episodes = 0;
  int bad = 0;
  double worst = 0.0;
  for (RewardVariant variant : {RewardVariant::Euclidean, RewardVariant::ShortestPath}) {
    TrainingEnv env;
    env.maps.emplace_back(training_map(), EpisodeSamplerConfig{});
    env.reward = variant;
    for (int k = 0; k < 4; ++k) {
      GaussianPolicy policy({64, 64}, CommandLimits{});
      Rng rng(1000 + k);
      policy.initialize(rng);
      const RolloutBatch batch = collect_batch(env, policy, 4000, k % 2 ? 200 : 40, 77 + k);
      for (const auto& ep : batch.episodes) {
        if (ep.success || ep.crash_steps > 0 || !ep.valid) continue;
        double sum = 0.0;
        for (std::size_t t = ep.begin; t < ep.end; ++t) sum += batch.rewards[t];
        const double err = std::abs(sum - (ep.d_start - ep.d_end));
        worst = std::max(worst, err);
        bad += err > 1e-9;
        ++episodes;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && episodes > 0,
          fmt("%d crash-free unfinished episodes over 8 batches, %d off by > 1e-9, max |sum r - (d0 - dT)| = %.1e, %.0f s",
              episodes, bad, worst, secs)};
}

// --- 11 ------------------------------------------------------------------

Verdict determinism(const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> failed;

  for (MapKind kind : {MapKind::Empty, MapKind::Simple, MapKind::Complex, MapKind::Corridor, MapKind::Circle}) {
    MapSpec spec;
    spec.kind = kind;
    spec.seed = 8;
    if (to_text(generate_map(spec)) != to_text(generate_map(spec))) failed.push_back(fmt("map %s", std::string(to_string(kind)).c_str()));
  }

  const std::vector<std::shared_ptr<const OccupancyGrid>> maps{training_map()};
  std::ostringstream d1;
  std::ostringstream d2;
  write_demoset(d1, generate_demoset(maps, 3, 5, ExpertConfig{}, SimConfig{}));
  write_demoset(d2, generate_demoset(maps, 3, 5, ExpertConfig{}, SimConfig{}));
  if (d1.str() != d2.str()) failed.push_back("demos");

  std::istringstream din(d1.str());
  const DemoSet demos = read_demoset(din);
  IlConfig il;
  il.iterations = 300;
  il.seed = 4;
  GaussianPolicy init({32, 32}, CommandLimits{});
  Rng rng(3);
  init.initialize(rng);
  if (train_il(demos, init, il).policy.flat_params() != train_il(demos, init, il).policy.flat_params())
    failed.push_back("imitation parameters");

  ExperimentConfig c = training_config(21, 2, RewardVariant::ShortestPath);
  c.shape = {32, 32};
  c.il.iterations = 200;
  c.batch_steps = 1000;
  c.episode_cap = 100;
  c.rl_iterations = 3;
  c.checkpoint_every = 1;
  const fs::path r1 = work / "c11_run_a";
  const fs::path r2 = work / "c11_run_b";
  fs::remove_all(r1);
  fs::remove_all(r2);
  run_training(c, training_inputs(), r1);
  run_training(c, training_inputs(), r2);
  for (const char* f : {"demos.rildemo", "il.rilnet", "il_curve.csv", "iterations.csv", "checkpoint_0003.rilnet", "final.rilnet"})
    if (slurp(r1 / f) != slurp(r2 / f) || slurp(r1 / f).empty()) failed.push_back(f);

  const EvalSettings settings = eval_settings(c);
  const GaussianPolicy policy = load_checkpoint(r1 / "final.rilnet", settings.sim.limits);
  auto e1 = evaluate(policy, maps, 20, 6, settings);
  auto e2 = evaluate(policy, maps, 20, 6, settings);
  export_trajectories(e1, work / "c11_eval_a");
  export_trajectories(e2, work / "c11_eval_b");
  if (slurp(work / "c11_eval_a" / "records.csv") != slurp(work / "c11_eval_b" / "records.csv"))
    failed.push_back("eval records");
  for (const auto& r : e1)
    if (slurp(work / "c11_eval_a" / r.trajectory_file) != slurp(work / "c11_eval_b" / r.trajectory_file))
      failed.push_back(r.trajectory_file);

  std::string list;
  for (const auto& f : failed) list += " " + f;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {failed.empty(), fmt("maps, demos, IL parameters, RL iteration CSV/checkpoints, eval records and trajectories "
                              "compared byte for byte; differing:%s, %.0f s",
                              failed.empty() ? " none" : list.c_str(), secs)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ril acceptance suite"};
  std::vector<int> only;
  std::string work = "acceptance_work";
  int bandit_iterations = 60;
  int bandit_batch = 4000;
  app.add_option("--only", only, "criteria to run (default: all)")->delimiter(',');
  app.add_option("--work", work, "directory for training artifacts");
  std::string report_path;
  app.add_option("--report", report_path, "also write the result lines to this file");
  app.add_option("--bandit-iterations", bandit_iterations);
  app.add_option("--bandit-batch", bandit_batch);
  int sparse_budget = 40;
  app.add_option("--sparse-iterations", sparse_budget, "RL iteration budget of the sparse-reward contrast");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, dijkstra_vs_bellman_ford},
      {2, pooling_and_normalization},
      {3, analytic_gradients},
      {4, fisher_vector_product},
      {5, trust_region_bound},
      {6, [&] { return constrained_bandit(bandit_iterations, bandit_batch); }},
      {7, [&] { return sample_efficiency(work); }},
      {8, [&] { return sparse_contrast(work, sparse_budget); }},
      {9, [&] { return evaluation_protocol(work); }},
      {10, telescoping},
      {11, [&] { return determinism(work); }},
  };
  fs::create_directories(work);
  std::ofstream report;
  if (!report_path.empty()) report.open(report_path);
  bool all = true;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    const std::string line = "criterion " + std::to_string(id) + ": " + (v.pass ? "PASS" : "FAIL") + "  " + v.detail;
    std::cout << line << std::endl;
    if (report) report << line << std::endl;
  }
  return all ? 0 : 1;
}
