#include <benchmark/benchmark.h>

#include "ril/harness/map_generator.hpp"
#include "ril/observation.hpp"
#include "ril/policy/gaussian_policy.hpp"
#include "ril/reward/distance_field.hpp"
#include "ril/world/lidar.hpp"

using namespace ril;

namespace {

const OccupancyGrid& bench_map() {
  static const OccupancyGrid grid = [] {
    MapSpec spec;
    spec.kind = MapKind::Complex;
    spec.seed = 1;
    return generate_map(spec, "bench");
  }();
  return grid;
}

GaussianPolicy bench_policy(int hidden) {
  GaussianPolicy p({hidden, hidden}, CommandLimits{});
  Rng rng(1);
  p.initialize(rng);
  return p;
}

}  // namespace

static void BM_Scan(benchmark::State& state) {
  const Pose pose{5.0, 5.0, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(scan(bench_map(), pose));
  state.SetItemsProcessed(state.iterations() * 1080);
}
BENCHMARK(BM_Scan);

static void BM_Observation(benchmark::State& state) {
  const Pose pose{5.0, 5.0, 0.3};
  const LidarScan s = scan(bench_map(), pose);
  for (auto _ : state) benchmark::DoNotOptimize(build_observation(s, pose, Pose{8.0, 8.0, 0.0}));
}
BENCHMARK(BM_Observation);

static void BM_PolicyForward(benchmark::State& state) {
  const GaussianPolicy p = bench_policy(static_cast<int>(state.range(0)));
  const Eigen::MatrixXd obs = Eigen::MatrixXd::Random(38, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(p.mean_batch(obs));
  state.SetItemsProcessed(state.iterations() * obs.cols());
}
BENCHMARK(BM_PolicyForward)->Arg(64)->Arg(128);

static void BM_FisherVectorProduct(benchmark::State& state) {
  const GaussianPolicy p = bench_policy(static_cast<int>(state.range(0)));
  const Eigen::MatrixXd obs = Eigen::MatrixXd::Random(38, 4000);
  Mlp::Tape tape;
  p.mean_batch(obs, &tape);
  const Eigen::VectorXd v = Eigen::VectorXd::Random(p.parameter_count());
  for (auto _ : state) benchmark::DoNotOptimize(p.fisher_vector_product(tape, v, 0.1));
}
BENCHMARK(BM_FisherVectorProduct)->Arg(64)->Arg(128);

static void BM_DijkstraField(benchmark::State& state) {
  const Pose goal{8.0, 8.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(dijkstra_field(bench_map(), goal, 0.18));
}
BENCHMARK(BM_DijkstraField);
BENCHMARK_MAIN();
