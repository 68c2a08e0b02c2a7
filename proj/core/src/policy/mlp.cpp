#include "ril/policy/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace ril {
namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

Mlp::Mlp(std::vector<int> sizes, Activation output_activation)
    : sizes_(std::move(sizes)), output_activation_(output_activation) {
  if (sizes_.size() < 2) throw std::invalid_argument("Mlp needs at least an input and an output size");
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    layers_.push_back({Eigen::MatrixXd::Zero(sizes_[l + 1], sizes_[l]), Eigen::VectorXd::Zero(sizes_[l + 1])});
  }
}

void Mlp::initialize(Rng& rng) {
  for (auto& layer : layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.weight.rows() + layer.weight.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    // Row-major fill order keeps the draw sequence tied to the flat layout.
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = dist(rng);
    }
    layer.bias.setZero();
  }
}

Eigen::Index Mlp::parameter_count() const {
  Eigen::Index n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

Eigen::VectorXd Mlp::flat() const {
  Eigen::VectorXd out(parameter_count());
  Eigen::Index offset = 0;
  for (const auto& layer : layers_) {
    const auto rows = layer.weight.rows();
    const auto cols = layer.weight.cols();
    Eigen::Map<RowMajorMatrix>(out.data() + offset, rows, cols) = layer.weight;
    offset += rows * cols;
    out.segment(offset, rows) = layer.bias;
    offset += rows;
  }
  return out;
}

void Mlp::set_flat(const Eigen::Ref<const Eigen::VectorXd>& params) {
  if (params.size() != parameter_count()) throw std::invalid_argument("Mlp::set_flat: size mismatch");
  Eigen::Index offset = 0;
  for (auto& layer : layers_) {
    const auto rows = layer.weight.rows();
    const auto cols = layer.weight.cols();
    layer.weight = Eigen::Map<const RowMajorMatrix>(params.data() + offset, rows, cols);
    offset += rows * cols;
    layer.bias = params.segment(offset, rows);
    offset += rows;
  }
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input, Tape* tape, const Eigen::MatrixXd* dropout_mask) const {
  if (input.rows() != input_size()) throw std::invalid_argument("Mlp::forward: input size mismatch");
  if (tape != nullptr) {
    tape->inputs.clear();
    tape->outputs.clear();
    tape->dropout_mask.resize(0, 0);
  }
  Eigen::MatrixXd x = input;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weight * x;
    z.colwise() += layers_[l].bias;
    if (is_tanh(l)) z = z.array().tanh().matrix();
    if (tape != nullptr) {
      tape->inputs.push_back(std::move(x));
      tape->outputs.push_back(z);
    }
    if (l == 0 && dropout_mask != nullptr && layers_.size() > 1) {
      z = z.cwiseProduct(*dropout_mask);
      if (tape != nullptr) tape->dropout_mask = *dropout_mask;
    }
    x = std::move(z);
  }
  return x;
}

Eigen::VectorXd Mlp::backward(const Tape& tape, const Eigen::MatrixXd& output_grad) const {
  Eigen::VectorXd grad(parameter_count());
  // Offsets of each layer's block in the flat vector.
  std::vector<Eigen::Index> offsets(layers_.size());
  Eigen::Index offset = 0;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    offsets[l] = offset;
    offset += layers_[l].weight.size() + layers_[l].bias.size();
  }

  Eigen::MatrixXd upstream = output_grad;  // dL/d(output of layer l), post-dropout
  for (std::size_t l = layers_.size(); l-- > 0;) {
    if (l == 0 && tape.dropout_mask.size() > 0) upstream = upstream.cwiseProduct(tape.dropout_mask);
    Eigen::MatrixXd delta = upstream;
    if (is_tanh(l)) delta.array() *= 1.0 - tape.outputs[l].array().square();

    const auto rows = layers_[l].weight.rows();
    const auto cols = layers_[l].weight.cols();
    Eigen::Map<RowMajorMatrix>(grad.data() + offsets[l], rows, cols) = delta * tape.inputs[l].transpose();
    grad.segment(offsets[l] + rows * cols, rows) = delta.rowwise().sum();
    if (l > 0) upstream = layers_[l].weight.transpose() * delta;
  }
  return grad;
}

Eigen::MatrixXd Mlp::jvp(const Tape& tape, const Eigen::VectorXd& tangent) const {
  if (tangent.size() != parameter_count()) throw std::invalid_argument("Mlp::jvp: tangent size mismatch");
  Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(input_size(), tape.inputs.front().cols());
  Eigen::Index offset = 0;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto rows = layers_[l].weight.rows();
    const auto cols = layers_[l].weight.cols();
    const Eigen::Map<const RowMajorMatrix> dw(tangent.data() + offset, rows, cols);
    offset += rows * cols;
    const auto db = tangent.segment(offset, rows);
    offset += rows;

    Eigen::MatrixXd dz = dw * tape.inputs[l];
    if (l > 0) dz.noalias() += layers_[l].weight * dx;
    dz.colwise() += db;
    if (is_tanh(l)) dz.array() *= 1.0 - tape.outputs[l].array().square();
    if (l == 0 && tape.dropout_mask.size() > 0) dz = dz.cwiseProduct(tape.dropout_mask);
    dx = std::move(dz);
  }
  return dx;
}

}  // namespace ril
