// Copyright 2026 The GANQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GANQ_NEURAL_HPP_
#define GANQ_NEURAL_HPP_

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ganq/rng.hpp"

namespace ganq {

// Flat view of every weight and bias of a network, layer by layer: W_l
// (column-major, out x in) followed by b_l.
using ParamVector = Eigen::VectorXd;

// Multilayer perceptron with tanh hidden layers and a linear output layer.
// Parameters live in one contiguous vector so the optimizer and the gradient
// checks operate on the same flat storage the layers read from.
class DenseNet {
 public:
  // Activations of one batched forward pass, inputs first, outputs last.
  struct Tape {
    std::vector<Eigen::MatrixXd> activations;
  };

  DenseNet() = default;
  // All parameters zero.
  explicit DenseNet(std::vector<int> layer_sizes);

  // Uniform(+-sqrt(6 / (fan_in + fan_out))) weights, zero biases.
  static DenseNet glorot(std::vector<int> layer_sizes, Rng& rng);
  // Three dense layers: input -> hidden -> hidden -> output.
  static std::vector<int> preset_sizes(int input_dim, int output_dim, int hidden_units);

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  int n_layers() const { return static_cast<int>(sizes_.size()) - 1; }
  Eigen::Index num_params() const { return params_.size(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }

  const ParamVector& params() const { return params_; }
  ParamVector& params() { return params_; }
  void set_params(const ParamVector& params);

  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<Eigen::MatrixXd> weight(int layer);
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;
  Eigen::Map<Eigen::VectorXd> bias(int layer);

  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;
  // Column-per-sample batch. Records activations when `tape` is non-null.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs, Tape* tape = nullptr) const;

  // Adds sum_j d<upstream_j, output_j>/dparams into `grad` and returns the
  // adjoint of the inputs (one column per sample).
  Eigen::MatrixXd backward(const Tape& tape, const Eigen::MatrixXd& upstream,
                           ParamVector& grad) const;
  // Input adjoint only; parameter gradients are not formed.
  Eigen::MatrixXd backward_inputs(const Tape& tape, const Eigen::MatrixXd& upstream) const;

  // Gradient of <upstream, forward(input)> with respect to all parameters.
  ParamVector param_gradient(const Eigen::VectorXd& input, const Eigen::VectorXd& upstream) const;

  // d output / d input for a scalar-output net, by forward-mode tangents.
  Eigen::VectorXd input_derivative(const Eigen::VectorXd& input) const;
  // d output / d input[coord] for each column (scalar-output nets).
  Eigen::RowVectorXd coordinate_derivative_batch(const Eigen::MatrixXd& inputs, int coord) const;

  struct Penalty {
    double value = 0.0;
    ParamVector grad;
  };
  // lambda * (|d output / d input[coord]| - 1)^2 and its parameter gradient,
  // by reverse-mode differentiation of the forward-mode tangent pass.
  Penalty penalty_param_gradient(const Eigen::VectorXd& input, int coord, double lambda) const;
  // Batched penalty: returns per-column penalty values and adds
  // `scale` * sum_j d penalty_j / dparams into `grad`.
  Eigen::VectorXd penalty_backward_batch(const Eigen::MatrixXd& inputs, int coord, double lambda,
                                         double scale, ParamVector& grad) const;

  // Checkpoint: "GANQNET1", u32 layer count + 1, u32 sizes, u64 parameter
  // count, then that many little-endian float64 values in params() order.
  void save(std::ostream& out) const;
  static DenseNet load(std::istream& in);
  void save_file(const std::string& path) const;
  static DenseNet load_file(const std::string& path);

  bool operator==(const DenseNet& other) const {
    return sizes_ == other.sizes_ && params_.size() == other.params_.size() &&
           (params_.array() == other.params_.array()).all();
  }

 private:
  void check_input_rows(Eigen::Index rows) const;
  Eigen::MatrixXd backward_impl(const Tape& tape, const Eigen::MatrixXd& upstream,
                                ParamVector* grad) const;

  std::vector<int> sizes_;
  std::vector<Eigen::Index> weight_offsets_;
  std::vector<Eigen::Index> bias_offsets_;
  ParamVector params_;
};

// RMSProp state. Constants: decay 0.9, epsilon 1e-8 (inside the square root).
struct OptState {
  Eigen::VectorXd accumulator;
  double decay = 0.9;
  double epsilon = 1e-8;
  long step_count = 0;

  OptState() = default;
  explicit OptState(Eigen::Index n) : accumulator(Eigen::VectorXd::Zero(n)) {}
};

// acc <- decay acc + (1 - decay) g^2;  params <- params - alpha g / sqrt(acc + eps)
void rmsprop_step(ParamVector& params, const ParamVector& grads, OptState& state, double alpha);

// alpha0 / (1 + t / k)
double lr_schedule(double alpha0, double t, double k);

// ----------------------------------------------------------------------------
// Finite-difference gradient checks.

// max_i |a_i - n_i| / max(max_i |a_i|, max_i |n_i|); zero when both vanish.
double relative_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric);

struct GradientPaths {
  std::function<ParamVector(const DenseNet&, const Eigen::VectorXd&, const Eigen::VectorXd&)>
      param_gradient;
  std::function<Eigen::VectorXd(const DenseNet&, const Eigen::VectorXd&)> input_derivative;
  std::function<ParamVector(const DenseNet&, const Eigen::VectorXd&, int, double)> penalty_gradient;

  static GradientPaths analytic();
};

struct GradCheckReport {
  double param_error = 0.0;
  double input_error = 0.0;
  double penalty_error = 0.0;
  double first_order_tolerance = 0.0;
  double second_order_tolerance = 0.0;
  bool param_ok = false;
  bool input_ok = false;
  bool penalty_ok = false;

  bool ok() const { return param_ok && input_ok && penalty_ok; }
};

// Compares the three gradient paths of `net` against central differences
// (step `h`) at a random input. The input-derivative and penalty paths are
// only checked when the net has a scalar output; for wider nets they report
// zero error. The penalty uses input coordinate 0 and lambda = 1.
GradCheckReport gradient_check(const DenseNet& net, double first_order_tolerance,
                               double second_order_tolerance, Rng& rng, double h = 1e-5,
                               const GradientPaths& paths = GradientPaths::analytic());
inline GradCheckReport gradient_check(const DenseNet& net, double tolerance, Rng& rng) {
  return gradient_check(net, tolerance, tolerance, rng);
}

}  // namespace ganq

#endif  // GANQ_NEURAL_HPP_
