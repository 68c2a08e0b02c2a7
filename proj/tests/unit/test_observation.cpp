#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ril/observation.hpp"
#include "ril/world/lidar.hpp"

using namespace ril;

namespace {

std::vector<double> naive_pool(const std::vector<double>& r, int k) {
  std::vector<double> out;
  for (std::size_t i = 0; i < r.size() / k; ++i) {
    double m = r[i * k];
    for (int j = 1; j < k; ++j)
      if (r[i * k + j] < m) m = r[i * k + j];
    out.push_back(m);
  }
  return out;
}

LidarScan scan_of(std::vector<double> ranges) {
  LidarScan s;
  s.ranges = std::move(ranges);
  return s;
}

}  // namespace

TEST_CASE("min_pool examples") {
  const std::vector<double> flat(1080, 30.0);
  const auto a = min_pool(flat);
  CHECK(a.size() == 36);
  for (double v : a) CHECK(v == 30.0);

  std::vector<double> one = flat;
  one[17] = 1.2;
  const auto b = min_pool(one);
  CHECK(b[0] == 1.2);
  for (int i = 1; i < 36; ++i) CHECK(b[i] == 30.0);

  CHECK_THROWS_AS(min_pool(std::vector<double>(1079, 1.0)), std::invalid_argument);
}

TEST_CASE("min_pool equals the brute-force windowed minimum and ignores order in a window") {
  Rng rng(1);
  std::uniform_real_distribution<double> range(0.01, 30.0);
  for (int n = 0; n < 1000; ++n) {
    std::vector<double> r(1080);
    for (double& x : r) x = range(rng);
    const auto pooled = min_pool(r);
    CHECK(pooled == naive_pool(r, 30));
    if (n % 100 == 0) {
      for (int w = 0; w < 36; ++w) std::shuffle(r.begin() + w * 30, r.begin() + (w + 1) * 30, rng);
      CHECK(min_pool(r) == pooled);
    }
  }
}

TEST_CASE("normalize_range") {
  CHECK(normalize_range(30.0) == -1.0);
  CHECK(normalize_range(0.0) == 1.0);
  CHECK(normalize_range(15.0) == 0.0);
  CHECK(normalize_range(45.0) == -1.0);
  double prev = normalize_range(0.0);
  for (double y = 0.01; y < 40.0; y += 0.01) {
    const double v = normalize_range(y);
    CHECK(v <= prev);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("build_observation goal encoding") {
  const LidarScan s = scan_of(std::vector<double>(1080, 30.0));
  const Pose robot(1.0, 2.0, 0.7);
  SUBCASE("coincident goal") {
    const auto o = build_observation(s, robot, robot);
    CHECK(o.values[36] == 1.0);
    CHECK(o.values[37] == 0.0);
  }
  SUBCASE("30 m straight ahead") {
    const Pose goal(robot.x + 30 * std::cos(0.7), robot.y + 30 * std::sin(0.7), 0.0);
    const auto o = build_observation(s, robot, goal);
    CHECK(o.values[36] == doctest::Approx(-1.0));
    CHECK(o.values[37] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("15 m directly behind") {
    const Pose r0(0.0, 0.0, 0.0);
    const auto o = build_observation(s, r0, Pose(-15.0, 0.0, 0.0));
    CHECK(o.values[36] == doctest::Approx(0.0));
    CHECK(o.values[37] == doctest::Approx(1.0));
  }
  SUBCASE("goal to the left") {
    const auto o = build_observation(s, Pose(0, 0, 0), Pose(0.0, 3.0, 0.0));
    CHECK(o.values[37] == doctest::Approx(0.5));
  }
}

TEST_CASE("observation components stay in [-1, 1]") {
  Rng rng(2);
  std::uniform_real_distribution<double> range(0.0, 60.0);
  std::uniform_real_distribution<double> pos(-100.0, 100.0);
  for (int n = 0; n < 500; ++n) {
    std::vector<double> r(1080);
    for (double& x : r) x = range(rng);
    const auto o = build_observation(scan_of(r), Pose(pos(rng), pos(rng), pos(rng)), Pose(pos(rng), pos(rng), 0));
    for (double v : o.values) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("denormalize_action") {
  const CommandLimits lim;
  auto c = denormalize_action({1.0, 0.0}, lim);
  CHECK(c.v == 0.5);
  CHECK(c.omega == 0.0);
  c = denormalize_action({-1.0, -1.0}, lim);
  CHECK(c.v == 0.0);
  CHECK(c.omega == -1.0);
  c = denormalize_action({3.0, 0.0}, lim);
  CHECK(c.v == 0.5);
  CHECK(c.omega == 0.0);
}

TEST_CASE("denormalize_action is an affine bijection onto the command box") {
  const CommandLimits lim{0.7, 1.3};
  Rng rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const NormalizedAction a{u(rng), u(rng)};
    const Command c = denormalize_action(a, lim);
    CHECK(c.v >= 0.0);
    CHECK(c.v <= 0.7);
    CHECK(std::abs(c.omega) <= 1.3);
    const NormalizedAction back = normalize_command(c, lim);
    CHECK(back[0] == doctest::Approx(a[0]).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(a[1]).epsilon(1e-12));
  }
  // Affine: the midpoint maps to the midpoint.
  const Command mid = denormalize_action({0.0, 0.0}, lim);
  CHECK(mid.v == doctest::Approx(0.35));
  CHECK(mid.omega == 0.0);
}

TEST_CASE("observation from a real scan pools the sensor") {
  const auto room = oracle::open_room(40);
  const Pose p(2.0, 2.0, 0.0);
  const LidarScan s = scan(room, p);
  const auto o = build_observation(s, p, Pose(3.0, 2.0, 0.0));
  const auto pooled = min_pool(s.ranges);
  for (int i = 0; i < 36; ++i) CHECK(o.values[i] == normalize_range(pooled[i]));
}
