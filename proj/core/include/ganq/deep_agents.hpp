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

#ifndef GANQ_DEEP_AGENTS_HPP_
#define GANQ_DEEP_AGENTS_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "ganq/environments.hpp"
#include "ganq/neural.hpp"
#include "ganq/replay_buffer.hpp"
#include "ganq/rng.hpp"
#include "ganq/tabular_agents.hpp"
#include "ganq/train_log.hpp"

namespace ganq {

inline constexpr std::int64_t kCartPoleEpsilonDecaySteps = 10000;

// Hyperparameters shared by the GAN Q-learning agent and the DQN baseline.
struct GanQConfig {
  int noise_dim = 8;
  int hidden_units = 64;
  int batch_size = 32;
  int n_disc = 5;
  int n_gen = 1;
  double lambda = 0.1;
  double alpha0 = 1e-3;
  double lr_decay_k = 500.0;  // learning rate alpha0 / (1 + episode / k)
  double gamma = 0.95;
  bool use_target_network = true;
  int target_sync_period = 100;  // in update rounds
  std::int64_t buffer_capacity = 100'000;
  int learning_starts = 32;  // transitions stored before the first update
  int train_every = 1;       // environment steps per update round
  // Returns are divided by this before entering the networks; 0 picks
  // max |reward| / (10 (1 - gamma)).
  double value_scale = 0.0;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.2;  // of episodes * max_steps
  std::int64_t epsilon_decay_steps = 0;  // overrides the fraction when positive
  int episodes = 300;
  int max_steps = 0;  // 0 keeps the environment preset
  std::uint64_t seed = 0;
  int diag_every = 10;    // episodes between W_1 diagnostics; 0 disables
  int diag_samples = 200;

  // Tabular: d_z 8, 64 hidden units, k 500. Control: d_z 16, 128 hidden
  // units, k 200 for CartPole and 500 for Acrobot.
  static GanQConfig preset(EnvKind kind);
  void validate() const;
};

using Batch = std::vector<const Transition*>;

// Noise consumed by one discriminator update.
struct DiscriminatorNoise {
  Eigen::MatrixXd z_target;  // noise_dim x m, for the Bellman targets
  Eigen::MatrixXd z_gen;     // noise_dim x m, for the generated samples
  Eigen::VectorXd mix;       // Uniform(0,1) interpolation weights

  static DiscriminatorNoise draw(int noise_dim, std::size_t m, Rng& rng);
};

Eigen::MatrixXd draw_noise(int noise_dim, std::size_t m, Rng& rng);

struct LossGrad {
  double loss = 0.0;
  ParamVector grad;
};

// max |reward| / (10 (1 - gamma)) from the tabular reward table, or
// 1 / (10 (1 - gamma)) for control environments; never below 1e-8.
double default_value_scale(const Environment& env, double gamma);

// Generator G: (state features, z) -> one value sample per action.
// Discriminator D: (x, state features, one-hot action) -> scalar score.
// Inside the networks values are divided by value_scale; the public
// value-returning methods report them in reward units.
class GanQAgent {
 public:
  GanQAgent(int obs_dim, int n_actions, const GanQConfig& config, double value_scale,
            Rng& init_rng);
  GanQAgent(const GanQConfig& config, DenseNet generator, DenseNet discriminator, int obs_dim,
            int n_actions, double value_scale);

  Eigen::VectorXd generator_values(const Observation& obs, Rng& rng) const;
  Eigen::VectorXd generator_values(const Observation& obs, const Eigen::VectorXd& z) const;
  // features: obs_dim x n. Returns n_actions x n in reward units.
  Eigen::MatrixXd generator_values_batch(const Eigen::MatrixXd& features, Rng& rng) const;

  // Epsilon-greedy over one shared generator sample; ties to lowest index.
  int select_action(const Observation& obs, double epsilon, Rng& rng) const;

  // r for terminal transitions, else r + gamma max_a G'(z | s', a).
  double bellman_target(const Transition& t, Rng& rng) const;
  double bellman_target(const Transition& t, const Eigen::VectorXd& z) const;

  // Batch mean of D(x_gen) - D(y) + lambda (|dD/dx(x_mix)| - 1)^2 and its
  // gradient in D's parameters. The penalty path can be left out entirely.
  LossGrad discriminator_loss_grad(const Batch& batch, const DiscriminatorNoise& noise,
                                   double lambda, bool include_penalty_path = true) const;
  // Batch mean of -D(G(z | s)[a]) and its gradient in G's parameters.
  LossGrad generator_loss_grad(const Batch& batch, const Eigen::MatrixXd& z) const;

  double discriminator_update(const Batch& batch, Rng& rng, double lambda, double alpha);
  double generator_update(const Batch& batch, Rng& rng, double alpha);
  void sync_target();

  const DenseNet& generator() const { return generator_; }
  const DenseNet& discriminator() const { return discriminator_; }
  const DenseNet& target_generator() const { return target_; }
  DenseNet& generator() { return generator_; }
  DenseNet& discriminator() { return discriminator_; }

  const GanQConfig& config() const { return config_; }
  double value_scale() const { return value_scale_; }
  int n_actions() const { return n_actions_; }
  int obs_dim() const { return obs_dim_; }

 private:
  Eigen::MatrixXd generator_inputs(const Batch& batch, bool next, const Eigen::MatrixXd& z) const;
  Eigen::MatrixXd discriminator_inputs(const Batch& batch, const Eigen::RowVectorXd& x) const;
  Eigen::RowVectorXd normalized_targets(const Batch& batch, const Eigen::MatrixXd& z) const;

  GanQConfig config_;
  int obs_dim_;
  int n_actions_;
  double value_scale_;
  DenseNet generator_;
  DenseNet discriminator_;
  DenseNet target_;
  OptState generator_opt_;
  OptState discriminator_opt_;
};

// Deterministic Q-network with a target copy and squared-error TD loss.
class DqnAgent {
 public:
  DqnAgent(int obs_dim, int n_actions, const GanQConfig& config, double value_scale,
           Rng& init_rng);

  Eigen::VectorXd q_values(const Observation& obs) const;
  int select_action(const Observation& obs, double epsilon, Rng& rng) const;
  double bellman_target(const Transition& t) const;
  LossGrad loss_grad(const Batch& batch) const;
  double update(const Batch& batch, double alpha);
  void sync_target();

  const DenseNet& network() const { return network_; }
  DenseNet& network() { return network_; }
  const DenseNet& target_network() const { return target_; }
  double value_scale() const { return value_scale_; }

 private:
  GanQConfig config_;
  int obs_dim_;
  int n_actions_;
  double value_scale_;
  DenseNet network_;
  DenseNet target_;
  OptState opt_;
};

// W_1 between `n_samples` generator draws and `n_samples` Monte-Carlo
// discounted returns under the agent's greedy policy, for every
// non-terminal (s, a) of a tabular environment. Rollouts run for the
// horizon at which gamma^H drops below 1e-3, ignoring the episode cap.
std::vector<DiagnosticRecord> distribution_diagnostic(const GanQAgent& agent,
                                                      const Environment& env, int n_samples,
                                                      Rng& rng);

struct GanQRun {
  TrainLog log;
  GanQAgent agent;
};

struct DqnRun {
  TrainLog log;
  DqnAgent agent;
};

// GAN Q-learning: act on a generator sample, store the transition, then per
// update round run n_disc discriminator and n_gen generator steps on fresh
// minibatches. Non-finite losses abort the run with log.diverged set.
GanQRun train_gan_q(const EnvSpec& env_spec, const GanQConfig& config,
                    const EpisodeCallback& on_episode = {});
DqnRun train_dqn(const EnvSpec& env_spec, const GanQConfig& config,
                 const EpisodeCallback& on_episode = {});

}  // namespace ganq

#endif  // GANQ_DEEP_AGENTS_HPP_
