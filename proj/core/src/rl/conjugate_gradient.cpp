#include "ril/rl/conjugate_gradient.hpp"

#include <cmath>

namespace ril {

CgResult conjugate_gradient(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& product,
                            const Eigen::VectorXd& b, int max_iterations, double tolerance) {
  CgResult out;
  out.x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double stop = tolerance * tolerance * b.squaredNorm();
  for (int k = 0; k < max_iterations && rr > stop; ++k) {
    const Eigen::VectorXd ap = product(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    out.x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    out.iterations = k + 1;
  }
  out.residual_norm = std::sqrt(rr);
  return out;
}

}  // namespace ril
