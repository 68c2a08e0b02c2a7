#pragma once

#include <functional>

#include <Eigen/Dense>

namespace ril {

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Solves A x = b for symmetric positive definite A given only products A v.
/// Stops after `max_iterations` or when ||r|| <= tolerance * ||b||.
CgResult conjugate_gradient(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& product,
                            const Eigen::VectorXd& b, int max_iterations, double tolerance = 1e-12);

}  // namespace ril
