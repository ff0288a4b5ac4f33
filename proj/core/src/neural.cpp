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

#include "ganq/neural.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace ganq {

DenseNet::DenseNet(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw std::invalid_argument("DenseNet: need at least one layer");
  Eigen::Index offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] <= 0 || sizes_[l + 1] <= 0) {
      throw std::invalid_argument("DenseNet: layer sizes must be positive");
    }
    weight_offsets_.push_back(offset);
    offset += static_cast<Eigen::Index>(sizes_[l]) * sizes_[l + 1];
    bias_offsets_.push_back(offset);
    offset += sizes_[l + 1];
  }
  params_ = ParamVector::Zero(offset);
}

DenseNet DenseNet::glorot(std::vector<int> layer_sizes, Rng& rng) {
  DenseNet net(std::move(layer_sizes));
  for (int l = 0; l < net.n_layers(); ++l) {
    auto w = net.weight(l);
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-limit, limit);
    }
  }
  return net;
}

std::vector<int> DenseNet::preset_sizes(int input_dim, int output_dim, int hidden_units) {
  return {input_dim, hidden_units, hidden_units, output_dim};
}

void DenseNet::set_params(const ParamVector& params) {
  if (params.size() != params_.size()) {
    throw std::invalid_argument("DenseNet::set_params: expected " +
                                std::to_string(params_.size()) + " values, got " +
                                std::to_string(params.size()));
  }
  params_ = params;
}

Eigen::Map<const Eigen::MatrixXd> DenseNet::weight(int layer) const {
  return {params_.data() + weight_offsets_[layer], sizes_[layer + 1], sizes_[layer]};
}
Eigen::Map<Eigen::MatrixXd> DenseNet::weight(int layer) {
  return {params_.data() + weight_offsets_[layer], sizes_[layer + 1], sizes_[layer]};
}
Eigen::Map<const Eigen::VectorXd> DenseNet::bias(int layer) const {
  return {params_.data() + bias_offsets_[layer], sizes_[layer + 1]};
}
Eigen::Map<Eigen::VectorXd> DenseNet::bias(int layer) {
  return {params_.data() + bias_offsets_[layer], sizes_[layer + 1]};
}

void DenseNet::check_input_rows(Eigen::Index rows) const {
  if (sizes_.empty()) throw std::logic_error("DenseNet: network has no layers");
  if (rows != input_dim()) {
    throw std::invalid_argument("DenseNet: input has " + std::to_string(rows) +
                                " rows, expected " + std::to_string(input_dim()));
  }
}

Eigen::VectorXd DenseNet::forward(const Eigen::VectorXd& input) const {
  check_input_rows(input.size());
  Eigen::VectorXd a = input;
  for (int l = 0; l < n_layers(); ++l) {
    Eigen::VectorXd z = weight(l) * a + bias(l);
    a = l + 1 < n_layers() ? Eigen::VectorXd(z.array().tanh()) : z;
  }
  return a;
}

Eigen::MatrixXd DenseNet::forward_batch(const Eigen::MatrixXd& inputs, Tape* tape) const {
  check_input_rows(inputs.rows());
  if (tape) {
    tape->activations.resize(static_cast<std::size_t>(n_layers()) + 1);
    tape->activations[0] = inputs;
  }
  Eigen::MatrixXd a = inputs;
  for (int l = 0; l < n_layers(); ++l) {
    Eigen::MatrixXd z = weight(l) * a;
    z.colwise() += bias(l);
    if (l + 1 < n_layers()) z = z.array().tanh();
    a = std::move(z);
    if (tape) tape->activations[static_cast<std::size_t>(l) + 1] = a;
  }
  return a;
}

Eigen::MatrixXd DenseNet::backward(const Tape& tape, const Eigen::MatrixXd& upstream,
                                   ParamVector& grad) const {
  if (grad.size() != num_params()) throw std::invalid_argument("backward: gradient size mismatch");
  return backward_impl(tape, upstream, &grad);
}

Eigen::MatrixXd DenseNet::backward_inputs(const Tape& tape, const Eigen::MatrixXd& upstream) const {
  return backward_impl(tape, upstream, nullptr);
}

Eigen::MatrixXd DenseNet::backward_impl(const Tape& tape, const Eigen::MatrixXd& upstream,
                                        ParamVector* grad) const {
  if (upstream.rows() != output_dim() || tape.activations.size() != sizes_.size() ||
      upstream.cols() != tape.activations.back().cols()) {
    throw std::invalid_argument("backward: upstream does not match the recorded pass");
  }
  // delta holds the adjoint of the pre-activation of layer l.
  Eigen::MatrixXd delta = upstream;
  for (int l = n_layers() - 1; l >= 0; --l) {
    const Eigen::MatrixXd& below = tape.activations[static_cast<std::size_t>(l)];
    if (grad) {
      Eigen::Map<Eigen::MatrixXd>(grad->data() + weight_offsets_[l], sizes_[l + 1], sizes_[l])
          .noalias() += delta * below.transpose();
      Eigen::Map<Eigen::VectorXd>(grad->data() + bias_offsets_[l], sizes_[l + 1]) +=
          delta.rowwise().sum();
    }
    Eigen::MatrixXd adj = weight(l).transpose() * delta;
    if (l > 0) adj.array() *= 1.0 - below.array().square();
    delta = std::move(adj);
  }
  return delta;
}

ParamVector DenseNet::param_gradient(const Eigen::VectorXd& input,
                                     const Eigen::VectorXd& upstream) const {
  if (upstream.size() != output_dim()) {
    throw std::invalid_argument("param_gradient: upstream length does not match output");
  }
  Tape tape;
  forward_batch(input, &tape);
  ParamVector grad = ParamVector::Zero(num_params());
  backward(tape, upstream, grad);
  return grad;
}

Eigen::VectorXd DenseNet::input_derivative(const Eigen::VectorXd& input) const {
  if (output_dim() != 1) throw std::invalid_argument("input_derivative: net output is not scalar");
  check_input_rows(input.size());
  // One tangent per input coordinate: columns of the identity.
  Eigen::MatrixXd a = input.replicate(1, input.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(input.size(), input.size());
  for (int l = 0; l < n_layers(); ++l) {
    Eigen::MatrixXd z = weight(l) * a;
    z.colwise() += bias(l);
    Eigen::MatrixXd zt = weight(l) * t;
    if (l + 1 < n_layers()) {
      a = z.array().tanh();
      t = (1.0 - a.array().square()) * zt.array();
    } else {
      a = std::move(z);
      t = std::move(zt);
    }
  }
  return t.row(0).transpose();
}

Eigen::RowVectorXd DenseNet::coordinate_derivative_batch(const Eigen::MatrixXd& inputs,
                                                         int coord) const {
  if (output_dim() != 1) throw std::invalid_argument("coordinate_derivative: output is not scalar");
  check_input_rows(inputs.rows());
  if (coord < 0 || coord >= input_dim()) throw std::out_of_range("coordinate out of range");
  Eigen::MatrixXd a = inputs;
  Eigen::MatrixXd t = weight(0).col(coord).replicate(1, inputs.cols());  // tangent pre-activation
  for (int l = 0; l < n_layers(); ++l) {
    Eigen::MatrixXd z = weight(l) * a;
    z.colwise() += bias(l);
    if (l > 0) t = weight(l) * t;
    if (l + 1 < n_layers()) {
      a = z.array().tanh();
      t = (1.0 - a.array().square()) * t.array();
    } else {
      a = std::move(z);
    }
  }
  return t.row(0);
}

Eigen::VectorXd DenseNet::penalty_backward_batch(const Eigen::MatrixXd& inputs, int coord,
                                                 double lambda, double scale,
                                                 ParamVector& grad) const {
  if (lambda < 0.0) throw std::invalid_argument("penalty: lambda must be nonnegative");
  if (output_dim() != 1) throw std::invalid_argument("penalty: net output is not scalar");
  check_input_rows(inputs.rows());
  if (coord < 0 || coord >= input_dim()) throw std::out_of_range("penalty: coordinate out of range");
  if (grad.size() != num_params()) throw std::invalid_argument("penalty: gradient size mismatch");

  const int n = n_layers();
  const Eigen::Index batch = inputs.cols();
  // Primal activations a_l, tangent pre-activations dz_l and tanh slopes.
  std::vector<Eigen::MatrixXd> acts(static_cast<std::size_t>(n) + 1);
  std::vector<Eigen::MatrixXd> dz(static_cast<std::size_t>(n));
  std::vector<Eigen::MatrixXd> slope(static_cast<std::size_t>(n));
  acts[0] = inputs;
  Eigen::MatrixXd tangent;  // tangent of a_l; a_0's tangent is e_coord
  for (int l = 0; l < n; ++l) {
    const auto li = static_cast<std::size_t>(l);
    Eigen::MatrixXd z = weight(l) * acts[li];
    z.colwise() += bias(l);
    dz[li] = l == 0 ? Eigen::MatrixXd(weight(0).col(coord).replicate(1, batch))
                    : Eigen::MatrixXd(weight(l) * tangent);
    if (l + 1 < n) {
      acts[li + 1] = z.array().tanh();
      slope[li] = 1.0 - acts[li + 1].array().square();
      tangent = slope[li].array() * dz[li].array();
    } else {
      acts[li + 1] = std::move(z);
      tangent = dz[li];
    }
  }

  const Eigen::RowVectorXd g = tangent.row(0);
  Eigen::VectorXd values(batch);
  // Adjoint of the scalar tangent output g.
  Eigen::MatrixXd tangent_adj(1, batch);
  for (Eigen::Index j = 0; j < batch; ++j) {
    const double excess = std::abs(g(j)) - 1.0;
    values(j) = lambda * excess * excess;
    const double sign = g(j) > 0.0 ? 1.0 : (g(j) < 0.0 ? -1.0 : 0.0);
    tangent_adj(0, j) = scale * 2.0 * lambda * excess * sign;
  }

  // Reverse sweep. At the top the penalty does not depend on the primal
  // output, so the primal pre-activation adjoint starts at zero.
  Eigen::MatrixXd z_adj = Eigen::MatrixXd::Zero(1, batch);
  Eigen::MatrixXd dz_adj = tangent_adj;
  for (int l = n - 1; l >= 0; --l) {
    const auto li = static_cast<std::size_t>(l);
    auto gw = Eigen::Map<Eigen::MatrixXd>(grad.data() + weight_offsets_[l], sizes_[l + 1],
                                          sizes_[l]);
    gw.noalias() += z_adj * acts[li].transpose();
    if (l == 0) {
      gw.col(coord) += dz_adj.rowwise().sum();
    } else {
      // tangent of a_l = slope_{l-1} * dz_{l-1}
      const Eigen::MatrixXd below_tangent = slope[li - 1].array() * dz[li - 1].array();
      gw.noalias() += dz_adj * below_tangent.transpose();
    }
    Eigen::Map<Eigen::VectorXd>(grad.data() + bias_offsets_[l], sizes_[l + 1]) +=
        z_adj.rowwise().sum();
    if (l == 0) break;

    const Eigen::MatrixXd a_adj = weight(l).transpose() * z_adj;
    const Eigen::MatrixXd t_adj = weight(l).transpose() * dz_adj;
    // a = tanh(z), s = 1 - a^2, t = s * dz
    const auto& a = acts[li].array();
    const auto& s = slope[li - 1].array();
    const Eigen::ArrayXXd s_adj = dz[li - 1].array() * t_adj.array();
    dz_adj = s * t_adj.array();
    z_adj = (a_adj.array() - 2.0 * a * s_adj) * s;
  }
  return values;
}

DenseNet::Penalty DenseNet::penalty_param_gradient(const Eigen::VectorXd& input, int coord,
                                                   double lambda) const {
  Penalty result;
  result.grad = ParamVector::Zero(num_params());
  result.value = penalty_backward_batch(input, coord, lambda, 1.0, result.grad)(0);
  return result;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

constexpr char kMagic[8] = {'G', 'A', 'N', 'Q', 'N', 'E', 'T', '1'};

template <typename T>
void write_le(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "checkpoint IO assumes little-endian");
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint: unexpected end of data");
  return value;
}

}  // namespace

void DenseNet::save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(sizes_.size()));
  for (int size : sizes_) write_le<std::uint32_t>(out, static_cast<std::uint32_t>(size));
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(params_.size()));
  for (Eigen::Index i = 0; i < params_.size(); ++i) write_le<double>(out, params_(i));
  if (!out) throw std::runtime_error("checkpoint: write failed");
}

DenseNet DenseNet::load(std::istream& in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("checkpoint: bad magic");
  }
  const auto count = read_le<std::uint32_t>(in);
  if (count < 2 || count > 1024) throw std::runtime_error("checkpoint: implausible layer count");
  std::vector<int> sizes;
  for (std::uint32_t i = 0; i < count; ++i) sizes.push_back(static_cast<int>(read_le<std::uint32_t>(in)));
  DenseNet net(std::move(sizes));
  const auto n_params = read_le<std::uint64_t>(in);
  if (n_params != static_cast<std::uint64_t>(net.num_params())) {
    throw std::runtime_error("checkpoint: parameter count does not match the layer shapes");
  }
  for (Eigen::Index i = 0; i < net.params_.size(); ++i) net.params_(i) = read_le<double>(in);
  return net;
}

void DenseNet::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
  save(out);
}

DenseNet DenseNet::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  return load(in);
}

// ---------------------------------------------------------------------------

void rmsprop_step(ParamVector& params, const ParamVector& grads, OptState& state, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("rmsprop_step: alpha must be positive");
  if (grads.size() != params.size()) throw std::invalid_argument("rmsprop_step: size mismatch");
  if (state.accumulator.size() != params.size()) {
    if (state.step_count != 0 || state.accumulator.size() != 0) {
      throw std::invalid_argument("rmsprop_step: optimizer state size mismatch");
    }
    state.accumulator = Eigen::VectorXd::Zero(params.size());
  }
  state.accumulator = state.decay * state.accumulator + (1.0 - state.decay) * grads.cwiseAbs2();
  params.array() -= alpha * grads.array() / (state.accumulator.array() + state.epsilon).sqrt();
  ++state.step_count;
}

double lr_schedule(double alpha0, double t, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("lr_schedule: k must be positive");
  if (t < 0.0) throw std::invalid_argument("lr_schedule: t must be nonnegative");
  return alpha0 / (1.0 + t / k);
}

// ---------------------------------------------------------------------------

double relative_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric) {
  if (analytic.size() != numeric.size()) throw std::invalid_argument("relative_error: size mismatch");
  if (analytic.size() == 0) return 0.0;
  const double scale = std::max(analytic.cwiseAbs().maxCoeff(), numeric.cwiseAbs().maxCoeff());
  const double diff = (analytic - numeric).cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return diff / scale;
}

GradientPaths GradientPaths::analytic() {
  GradientPaths paths;
  paths.param_gradient = [](const DenseNet& net, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& up) { return net.param_gradient(x, up); };
  paths.input_derivative = [](const DenseNet& net, const Eigen::VectorXd& x) {
    return net.input_derivative(x);
  };
  paths.penalty_gradient = [](const DenseNet& net, const Eigen::VectorXd& x, int coord,
                              double lambda) {
    return net.penalty_param_gradient(x, coord, lambda).grad;
  };
  return paths;
}

GradCheckReport gradient_check(const DenseNet& net, double first_order_tolerance,
                               double second_order_tolerance, Rng& rng, double h,
                               const GradientPaths& paths) {
  GradCheckReport report;
  report.first_order_tolerance = first_order_tolerance;
  report.second_order_tolerance = second_order_tolerance;

  Eigen::VectorXd x(net.input_dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
  Eigen::VectorXd upstream(net.output_dim());
  for (Eigen::Index i = 0; i < upstream.size(); ++i) upstream(i) = rng.normal();

  DenseNet probe = net;
  const auto central = [&](Eigen::Index i, const auto& objective) {
    const double saved = probe.params()(i);
    probe.params()(i) = saved + h;
    const double plus = objective(probe);
    probe.params()(i) = saved - h;
    const double minus = objective(probe);
    probe.params()(i) = saved;
    return (plus - minus) / (2.0 * h);
  };

  {
    const ParamVector analytic = paths.param_gradient(net, x, upstream);
    ParamVector numeric(net.num_params());
    const auto objective = [&](const DenseNet& n) { return upstream.dot(n.forward(x)); };
    for (Eigen::Index i = 0; i < numeric.size(); ++i) numeric(i) = central(i, objective);
    report.param_error = relative_error(analytic, numeric);
  }

  if (net.output_dim() == 1) {
    const Eigen::VectorXd analytic = paths.input_derivative(net, x);
    Eigen::VectorXd numeric(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      numeric(i) = (net.forward(xp)(0) - net.forward(xm)(0)) / (2.0 * h);
    }
    report.input_error = relative_error(analytic, numeric);

    constexpr double kLambda = 1.0;
    const ParamVector analytic_penalty = paths.penalty_gradient(net, x, 0, kLambda);
    ParamVector numeric_penalty(net.num_params());
    const auto objective = [&](const DenseNet& n) {
      const double g = n.coordinate_derivative_batch(x, 0)(0);
      return kLambda * (std::abs(g) - 1.0) * (std::abs(g) - 1.0);
    };
    for (Eigen::Index i = 0; i < numeric_penalty.size(); ++i) {
      numeric_penalty(i) = central(i, objective);
    }
    report.penalty_error = relative_error(analytic_penalty, numeric_penalty);
  }

  report.param_ok = report.param_error <= first_order_tolerance;
  report.input_ok = report.input_error <= first_order_tolerance;
  report.penalty_ok = report.penalty_error <= second_order_tolerance;
  return report;
}

}  // namespace ganq
