#include "ril/rl/value_function.hpp"

#include <cmath>

#include "ril/common/error.hpp"

namespace ril {

ValueFunction::ValueFunction(int hidden) : net_({kObservationSize, hidden, hidden, 1}, Activation::Identity) {}

void ValueFunction::initialize(Rng& rng) { net_.initialize(rng); }

std::vector<double> ValueFunction::predict(const Eigen::MatrixXd& obs) const {
  const Eigen::MatrixXd v = net_.forward(obs);
  return std::vector<double>(v.data(), v.data() + v.size());
}

ValueAndGradient ValueFunction::loss_gradient(const Eigen::MatrixXd& obs, std::span<const double> targets) const {
  if (static_cast<Eigen::Index>(targets.size()) != obs.cols()) throw std::invalid_argument("value targets size mismatch");
  Mlp::Tape tape;
  const Eigen::MatrixXd v = net_.forward(obs, &tape);
  const Eigen::Map<const Eigen::RowVectorXd> y(targets.data(), static_cast<Eigen::Index>(targets.size()));
  const Eigen::RowVectorXd residual = v.row(0) - y;
  const double n = static_cast<double>(obs.cols());
  ValueAndGradient out;
  out.value = residual.squaredNorm() / n;
  out.gradient = net_.backward(tape, (2.0 / n) * residual);
  if (!std::isfinite(out.value) || !out.gradient.allFinite()) throw NumericalError("non-finite value loss");
  return out;
}

double ValueFunction::fit(const Eigen::MatrixXd& obs, std::span<const double> targets, int steps,
                          double learning_rate) {
  Eigen::VectorXd params = net_.flat();
  for (int s = 0; s < steps; ++s) {
    const ValueAndGradient vg = loss_gradient(obs, targets);
    params -= learning_rate * vg.gradient;
    net_.set_flat(params);
  }
  return loss_gradient(obs, targets).value;
}

}  // namespace ril
