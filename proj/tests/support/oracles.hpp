#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the code it checks beyond plain accessors.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ril/common/random.hpp"
#include "ril/policy/gaussian_policy.hpp"
#include "ril/rl/rollout.hpp"
#include "ril/world/occupancy_grid.hpp"

namespace oracle {

/// Fixed-step ray marching: first sample point (step apart) inside an
/// occupied cell, or max_range.
double march_ray(const ril::OccupancyGrid& grid, const ril::Pose& origin, double bearing, double max_range,
                 double step = 1e-3);

/// Blocked mask by brute force over all occupied cells: a cell is blocked if
/// occupied or its center is strictly closer than `radius` to an occupied
/// cell square.
std::vector<std::uint8_t> blocked_mask(const ril::OccupancyGrid& grid, double radius);

/// Bellman-Ford single-source distances on the 8-connected grid over
/// `blocked` with the no-corner-cutting diagonal rule.
std::vector<double> bellman_ford(const std::vector<std::uint8_t>& blocked, int width, int height, double resolution,
                                 ril::CellIndex goal);

/// A_t = sum_l (gamma lambda)^l delta_{t+l} within each episode.
std::vector<double> gae_double_loop(const std::vector<double>& signal, const std::vector<double>& values,
                                    const std::vector<std::size_t>& episode_lengths, double gamma, double lambda);

/// G_0 of G_t = r_t + gamma G_{t+1}, evaluated recursively.
double recursive_return(const std::vector<double>& seq, double gamma, std::size_t t = 0);

/// Central differences of f at x.
Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                 double eps = 1e-5);

/// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor).
double max_relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double floor = 1e-6);

/// Dense Hessian of f at x by second-order central differences.
Eigen::MatrixXd numeric_hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                double eps = 1e-4);

/// Random grid with closed boundary and independent interior occupancy.
ril::OccupancyGrid random_grid(int width, int height, double resolution, double fill, ril::Rng& rng);

/// Grid from rows of '#' / '.'.
ril::OccupancyGrid grid_from_rows(const std::vector<std::string>& rows, double resolution = 0.1);

/// Open square room (boundary walls only).
ril::OccupancyGrid open_room(int cells, double resolution = 0.1);

/// Standard normal CDF.
double normal_cdf(double z);

/// One-step Gaussian bandit: every episode is a single step from the zero
/// observation; the action's omega component a1 is the decision variable.
struct Bandit {
  std::function<double(double a1)> reward;
  std::function<double(double a1)> cost;
};

/// Batch of `n` single-step episodes with actions sampled from `policy`.
ril::RolloutBatch bandit_batch(const ril::GaussianPolicy& policy, const Bandit& bandit, int n, std::uint64_t seed);

/// Mean and std of the omega component of the policy at the zero observation.
std::pair<double, double> bandit_omega(const ril::GaussianPolicy& policy);

}  // namespace oracle
