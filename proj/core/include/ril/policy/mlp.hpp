#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ril/common/random.hpp"

namespace ril {

enum class Activation { Tanh, Identity };

/// Fully connected network with tanh hidden layers and a configurable output
/// activation. Batches are column-major: one sample per column.
///
/// Flat parameter layout, per layer in order: weights row-major, then biases.
class Mlp {
 public:
  struct Layer {
    Eigen::MatrixXd weight;  ///< out x in
    Eigen::VectorXd bias;
  };

  /// Intermediate values of a forward pass needed by backward() and jvp().
  struct Tape {
    std::vector<Eigen::MatrixXd> inputs;   ///< input of layer l (after dropout for l = 1)
    std::vector<Eigen::MatrixXd> outputs;  ///< activation output of layer l (before dropout)
    Eigen::MatrixXd dropout_mask;          ///< empty when no dropout was applied
  };

  Mlp() = default;
  /// sizes = {input, hidden..., output}; at least one layer.
  Mlp(std::vector<int> sizes, Activation output_activation);

  /// Glorot-uniform weights in +-sqrt(6/(fan_in+fan_out)), zero biases.
  void initialize(Rng& rng);

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }
  Activation output_activation() const { return output_activation_; }

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

  Eigen::Index parameter_count() const;
  Eigen::VectorXd flat() const;
  void set_flat(const Eigen::Ref<const Eigen::VectorXd>& params);

  /// Forward pass. `dropout_mask`, if given, multiplies the output of the
  /// first layer (shape hidden1 x batch, entries 0 or 1/(1-p)).
  Eigen::MatrixXd forward(const Eigen::MatrixXd& input, Tape* tape = nullptr,
                          const Eigen::MatrixXd* dropout_mask = nullptr) const;

  /// Reverse mode: gradient of sum_j <output_grad_j, out_j> w.r.t. the flat
  /// parameters.
  Eigen::VectorXd backward(const Tape& tape, const Eigen::MatrixXd& output_grad) const;

  /// Forward mode: directional derivative of every output column along the
  /// flat parameter tangent.
  Eigen::MatrixXd jvp(const Tape& tape, const Eigen::VectorXd& tangent) const;

 private:
  std::vector<int> sizes_;
  Activation output_activation_ = Activation::Identity;
  std::vector<Layer> layers_;

  bool is_tanh(std::size_t layer) const {
    return layer + 1 < layers_.size() || output_activation_ == Activation::Tanh;
  }
};

}  // namespace ril
