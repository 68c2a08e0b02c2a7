#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ril/common/error.hpp"
#include "ril/reward/distance_field.hpp"
#include "ril/reward/reward.hpp"

using namespace ril;

TEST_CASE("dijkstra_field on a corridor grows by one resolution per cell") {
  const auto g = oracle::grid_from_rows({"############", "#..........#", "############"}, 0.1);
  const Pose goal(g.cell_center(1, 1).x, g.cell_center(1, 1).y, 0.0);
  const auto field = dijkstra_field(g, goal, 0.0);
  CHECK(field.at({1, 1}) == 0.0);
  for (int x = 2; x <= 10; ++x) CHECK(field.at({x, 1}) == doctest::Approx((x - 1) * 0.1).epsilon(1e-12));
  CHECK_FALSE(field.reachable({0, 0}));
}

TEST_CASE("dijkstra_field rejects a blocked goal") {
  const auto g = oracle::open_room(20);
  CHECK_THROWS_AS(dijkstra_field(g, Pose(0.15, 1.0, 0.0), 0.18), GeometryError);
  CHECK_THROWS_AS(dijkstra_field(g, Pose(0.05, 1.0, 0.0), 0.0), GeometryError);
}

TEST_CASE("dijkstra_field equals Bellman-Ford and is triangle consistent") {
  Rng rng(17);
  for (int m = 0; m < 10; ++m) {
    const auto g = oracle::random_grid(30, 30, 0.1, 0.2, rng);
    const double inflate = m % 2 ? 0.12 : 0.0;
    const auto blocked = oracle::blocked_mask(g, inflate);
    CellIndex goal{1, 1};
    for (int i = 0; blocked[goal.iy * 30 + goal.ix]; ++i) goal = {1 + i % 28, 1 + i / 28};
    const auto field = dijkstra_field(g, Pose(g.cell_center(goal).x, g.cell_center(goal).y, 0.0), inflate);
    const auto ref = oracle::bellman_ford(blocked, 30, 30, 0.1, goal);
    CHECK(field.values() == ref);

    for (int y = 0; y < 30; ++y) {
      for (int x = 0; x < 30; ++x) {
        if (!field.reachable({x, y})) continue;
        std::array<GridEdge, 8> edges;
        const int n = field.graph().neighbors({x, y}, edges);
        for (int e = 0; e < n; ++e) CHECK(field.at({x, y}) <= field.at(edges[e].to) + edges[e].cost + 1e-12);
        const double euclid = distance(g.cell_center(x, y), g.cell_center(goal));
        CHECK(field.at({x, y}) >= euclid - 0.1 * std::sqrt(2.0));
      }
    }
  }
}

TEST_CASE("no diagonal moves past a corner") {
  const auto g = oracle::grid_from_rows({
      "#####",
      "#.#.#",
      "##..#",
      "#####",
  });
  const auto field = dijkstra_field(g, Pose(g.cell_center(1, 1).x, g.cell_center(1, 1).y, 0.0), 0.0);
  CHECK_FALSE(field.reachable({2, 2}));
}

TEST_CASE("distance field CSV dump") {
  const auto g = oracle::grid_from_rows({"####", "#..#", "####"}, 0.5);
  const auto field = dijkstra_field(g, Pose(g.cell_center(1, 1).x, g.cell_center(1, 1).y, 0.0), 0.0);
  CHECK(field.to_csv() == "inf,inf,inf,inf\ninf,0,0.5,inf\ninf,inf,inf,inf\n");
}

TEST_CASE("d_of_state variants") {
  const auto g = oracle::open_room(60);
  const Pose goal(4.0, 5.0, 0.0);
  const auto sparse = make_reward_spec(RewardVariant::Sparse, g, goal, 0.18);
  const auto euclid = make_reward_spec(RewardVariant::Euclidean, g, goal, 0.18);
  CHECK(d_of_state(sparse, Pose(1.0, 1.0, 0.0)) == 0.0);
  CHECK(d_of_state(euclid, Pose(1.0, 1.0, 0.0)) == 5.0);

  SUBCASE("shortest path around a wall exceeds the straight line") {
    std::vector<std::string> rows(40, "#" + std::string(38, '.') + "#");
    rows.front() = rows.back() = std::string(40, '#');
    for (int y = 5; y < 40; ++y) rows[y][20] = '#';
    const auto walled = oracle::grid_from_rows(rows);
    const Pose a(1.0, 1.0, 0.0);
    const Pose b(3.0, 1.0, 0.0);
    const auto spec = make_reward_spec(RewardVariant::ShortestPath, walled, b, 0.18);
    const double d = d_of_state(spec, a);
    CHECK(d > distance(a, b) + 1.0);
    const auto ref = oracle::bellman_ford(oracle::blocked_mask(walled, 0.18), 40, 40, 0.1, walled.cell_at(b.position()));
    const CellIndex ca = walled.cell_at(a.position());
    CHECK(d == ref[ca.iy * 40 + ca.ix]);
  }
}

TEST_CASE("reward and cost") {
  const auto g = oracle::open_room(60);
  const Pose goal(4.0, 1.0, 0.0);
  const auto euclid = make_reward_spec(RewardVariant::Euclidean, g, goal, 0.18);
  const auto sparse = make_reward_spec(RewardVariant::Sparse, g, goal, 0.18);
  CHECK(reward(euclid, Pose(1, 1, 0), Pose(1.1, 1, 0), false) == doctest::Approx(0.1));
  CHECK(reward(euclid, Pose(1, 1, 0), Pose(1.1, 1, 0), true) == 10.0);
  CHECK(reward(sparse, Pose(1, 1, 0), Pose(1.1, 1, 0), false) == 0.0);
  CHECK(cost(true) == 1.0);
  CHECK(cost(false) == 0.0);
  const std::vector<double> four{1, 1, 1, 1};
  double raw = 0.0;
  for (double c : four) raw += c;
  CHECK(raw == 4.0);
  CHECK(discounted_return(four, 1.0) == 4.0);
}

TEST_CASE("reward variant names round trip") {
  for (auto v : {RewardVariant::Sparse, RewardVariant::Euclidean, RewardVariant::ShortestPath})
    CHECK(parse_reward_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_reward_variant("dense"), ConfigError);
}

TEST_CASE("discounted_return") {
  CHECK(discounted_return(std::vector<double>{10.0}, 0.3) == 10.0);
  CHECK(discounted_return(std::vector<double>{1, 1, 1}, 0.5) == 1.75);
  CHECK(discounted_return(std::vector<double>{}, 0.5) == 0.0);
  Rng rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  std::uniform_real_distribution<double> gam(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> seq(1 + i % 50);
    for (double& x : seq) x = n(rng);
    const double gamma = gam(rng);
    CHECK(discounted_return(seq, gamma) == oracle::recursive_return(seq, gamma));
  }
}

TEST_CASE("telescoping shaping along a crash-free path") {
  const auto g = oracle::open_room(60);
  const Pose goal(5.0, 5.0, 0.0);
  for (auto variant : {RewardVariant::Euclidean, RewardVariant::ShortestPath}) {
    const auto spec = make_reward_spec(variant, g, goal, 0.18);
    Pose prev(1.0, 1.0, 0.0);
    const Pose s0 = prev;
    double sum = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Pose next(prev.x + 0.1, prev.y + 0.05, 0.0);
      sum += reward(spec, prev, next, false);
      prev = next;
    }
    CHECK(sum == doctest::Approx(d_of_state(spec, s0) - d_of_state(spec, prev)).epsilon(1e-12));
  }
}
