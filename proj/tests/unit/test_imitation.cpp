#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "ril/expert/demoset.hpp"
#include "ril/imitation/behavior_cloning.hpp"
#include "ril/observation.hpp"

using namespace ril;

namespace {

GaussianPolicy fresh(PolicyShape shape, std::uint64_t seed) {
  GaussianPolicy p(shape, CommandLimits{});
  Rng rng(seed);
  p.initialize(rng);
  return p;
}

const DemoSet& small_demos() {
  static const DemoSet set = [] {
    std::vector<std::string> rows(40, "#" + std::string(38, '.') + "#");
    rows.front() = rows.back() = std::string(40, '#');
    for (int y = 12; y < 20; ++y)
      for (int x = 15; x < 22; ++x) rows[y][x] = '#';
    const auto map = std::make_shared<const OccupancyGrid>(oracle::grid_from_rows(rows));
    const std::vector<std::shared_ptr<const OccupancyGrid>> maps{map};
    return generate_demoset(maps, 10, 7, ExpertConfig{}, SimConfig{});
  }();
  return set;
}

}  // namespace

TEST_CASE("bc_loss examples") {
  GaussianPolicy p = fresh({8, 8}, 1);
  Rng rng(2);
  Eigen::MatrixXd obs = Eigen::MatrixXd::Random(kObservationSize, 5);
  SUBCASE("policy equal to the expert") {
    const Eigen::Matrix2Xd commands = p.mean_batch(obs);
    CHECK(bc_loss(p, obs, commands) == doctest::Approx(0.0).scale(1).epsilon(1e-15));
  }
  SUBCASE("hand computed single sample") {
    p.set_flat_params(Eigen::VectorXd::Zero(p.parameter_count()));
    Eigen::Matrix2Xd cmd(2, 1);
    cmd << 0.5, 0.5;  // normalized (1, 0.5) against a zero network output
    // mean over two dimensions of squared differences: (1 + 0.25) / 2
    CHECK(bc_loss(p, obs.leftCols(1), cmd) == doctest::Approx(0.625));
  }
}

TEST_CASE("bc_loss gradient matches central differences") {
  Rng rng(3);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    GaussianPolicy p = fresh({10, 6}, 100 + k);
    Eigen::VectorXd x = p.flat_params() + 0.3 * Eigen::VectorXd::Random(p.parameter_count());
    p.set_flat_params(x);
    const Eigen::MatrixXd obs = Eigen::MatrixXd::Random(kObservationSize, 7);
    Eigen::Matrix2Xd cmd(2, 7);
    cmd.row(0) = 0.25 * (Eigen::RowVectorXd::Random(7).array() + 1.0).matrix();
    cmd.row(1) = Eigen::RowVectorXd::Random(7);
    const Eigen::MatrixXd mask = p.sample_dropout_mask(7, rng);
    const auto vg = bc_loss_gradient(p, obs, cmd, &mask);
    const auto f = [&](const Eigen::VectorXd& v) {
      GaussianPolicy q = p;
      q.set_flat_params(v);
      return bc_loss(q, obs, cmd, &mask);
    };
    CHECK(vg.value == doctest::Approx(f(x)));
    worst = std::max(worst, oracle::max_relative_error(vg.gradient, oracle::numeric_gradient(f, x)));
    CHECK(vg.gradient.tail(2).isZero());
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("train_il") {
  const DemoSet& demos = small_demos();
  const GaussianPolicy init = fresh({32, 32}, 4);
  IlConfig cfg;
  cfg.iterations = 3000;
  cfg.eval_interval = 250;
  cfg.seed = 5;

  SUBCASE("validation loss halves and log-std stays") {
    const IlResult r = train_il(demos, init, cfg);
    const auto& curve = r.report.curve;
    REQUIRE(curve.size() >= 2);
    CHECK(curve.front().iteration == 0);
    CHECK(curve.back().iteration == cfg.iterations);
    CHECK(curve.back().validation_loss <= 0.5 * curve.front().validation_loss);
    CHECK(curve.back().train_loss <= curve.front().train_loss);
    CHECK(r.policy.log_std() == init.log_std());
    CHECK(r.report.validation_samples > 0);
    CHECK(r.report.train_samples + r.report.validation_samples == demos.step_count());
  }
  SUBCASE("zero learning rate leaves the parameters") {
    IlConfig zero = cfg;
    zero.learning_rate = 0.0;
    zero.iterations = 50;
    CHECK(train_il(demos, init, zero).policy.flat_params() == init.flat_params());
  }
  SUBCASE("same seed, same parameters") {
    IlConfig shortcfg = cfg;
    shortcfg.iterations = 300;
    CHECK(train_il(demos, init, shortcfg).policy.flat_params() == train_il(demos, init, shortcfg).policy.flat_params());
  }
}

TEST_CASE("flatten_demos stacks every step") {
  const DemoSet& demos = small_demos();
  const DemoMatrix m = flatten_demos(demos);
  CHECK(static_cast<std::size_t>(m.observations.cols()) == demos.step_count());
  CHECK(m.commands(0, 0) == demos.demos[0].commands[0].v);
}
