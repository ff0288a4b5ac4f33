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

#include "ganq/deep_agents.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "ganq/exact_solvers.hpp"

namespace ganq {

GanQConfig GanQConfig::preset(EnvKind kind) {
  GanQConfig config;
  const EnvSpec env = EnvSpec::preset(kind);
  config.gamma = env.gamma;
  if (is_tabular_kind(kind)) {
    config.noise_dim = 8;
    config.hidden_units = 64;
    config.lr_decay_k = 500.0;
    config.episodes = 300;
    config.epsilon_decay_steps = kTabularEpsilonDecaySteps;
  } else {
    config.noise_dim = 16;
    config.hidden_units = 128;
    config.lr_decay_k = kind == EnvKind::kCartPole ? 200.0 : 500.0;
    config.episodes = 1000;
    if (kind == EnvKind::kCartPole) {
      // Short CartPole episodes make the fractional schedule explore for far too long.
      config.epsilon_decay_steps = kCartPoleEpsilonDecaySteps;
      // Raw return units with a stiffer penalty; the scaled default overestimates
      // and collapses to a near-random policy.
      config.value_scale = 1.0;
      config.lambda = 1.0;
    } else {
      // 500-step episodes: update every 4 steps and keep more exploration so
      // the sparse goal is still found after epsilon bottoms out.
      config.train_every = 4;
      config.epsilon_end = 0.1;
    }
    config.diag_every = 0;
  }
  return config;
}

void GanQConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid agent config: ") + what);
  };
  require(noise_dim >= 1, "noise_dim must be >= 1");
  require(hidden_units >= 1, "hidden_units must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(n_disc >= 1, "n_disc must be >= 1");
  require(n_gen >= 1, "n_gen must be >= 1");
  require(lambda >= 0.0, "lambda must be >= 0");
  require(alpha0 > 0.0, "alpha0 must be positive");
  require(lr_decay_k > 0.0, "lr_decay_k must be positive");
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0,1)");
  require(target_sync_period >= 1, "target_sync_period must be >= 1");
  require(buffer_capacity >= 1, "buffer_capacity must be >= 1");
  require(learning_starts >= 1, "learning_starts must be >= 1");
  require(train_every >= 1, "train_every must be >= 1");
  require(value_scale >= 0.0, "value_scale must be >= 0");
  require(epsilon_start >= 0.0 && epsilon_start <= 1.0, "epsilon_start must lie in [0,1]");
  require(epsilon_end >= 0.0 && epsilon_end <= 1.0, "epsilon_end must lie in [0,1]");
  require(epsilon_decay_fraction >= 0.0, "epsilon_decay_fraction must be >= 0");
  require(epsilon_decay_steps >= 0, "epsilon_decay_steps must be >= 0");
  require(episodes >= 1, "episodes must be >= 1");
  require(max_steps >= 0, "max_steps must be >= 0");
  require(diag_every >= 0, "diag_every must be >= 0");
  require(diag_samples >= 1, "diag_samples must be >= 1");
}

Eigen::MatrixXd draw_noise(int noise_dim, std::size_t m, Rng& rng) {
  Eigen::MatrixXd z(noise_dim, static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    for (Eigen::Index i = 0; i < z.rows(); ++i) z(i, j) = rng.normal();
  }
  return z;
}

DiscriminatorNoise DiscriminatorNoise::draw(int noise_dim, std::size_t m, Rng& rng) {
  DiscriminatorNoise noise;
  noise.z_target = draw_noise(noise_dim, m, rng);
  noise.z_gen = draw_noise(noise_dim, m, rng);
  noise.mix.resize(static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < noise.mix.size(); ++i) noise.mix(i) = rng.uniform();
  return noise;
}

double default_value_scale(const Environment& env, double gamma) {
  double bound = 1.0;
  if (env.is_tabular()) {
    const TabularMdp mdp = env.tabular_dynamics();
    bound = 0.0;
    for (double r : mdp.rewards) bound = std::max(bound, std::abs(r));
  }
  // Returns then span at most 10 network units.
  return std::max(0.1 * bound / (1.0 - gamma), 1e-8);
}

namespace {

Eigen::Map<const Eigen::VectorXd> features_of(const Observation& obs) {
  return {obs.features.data(), static_cast<Eigen::Index>(obs.features.size())};
}

Eigen::VectorXd concat(const Observation& obs, const Eigen::VectorXd& z) {
  Eigen::VectorXd input(static_cast<Eigen::Index>(obs.features.size()) + z.size());
  input << features_of(obs), z;
  return input;
}

void check_batch(const Batch& batch) {
  if (batch.empty()) throw std::invalid_argument("update requires a nonempty batch");
}

int argmax_column(const Eigen::MatrixXd& values, Eigen::Index col) {
  int best = 0;
  for (Eigen::Index a = 1; a < values.rows(); ++a) {
    if (values(a, col) > values(best, col)) best = static_cast<int>(a);
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// GanQAgent

GanQAgent::GanQAgent(int obs_dim, int n_actions, const GanQConfig& config, double value_scale,
                     Rng& init_rng)
    : config_(config), obs_dim_(obs_dim), n_actions_(n_actions), value_scale_(value_scale) {
  config_.validate();
  if (obs_dim <= 0 || n_actions <= 0) throw std::invalid_argument("GanQAgent: empty shapes");
  if (!(value_scale > 0.0)) throw std::invalid_argument("GanQAgent: value_scale must be positive");
  generator_ = DenseNet::glorot(
      DenseNet::preset_sizes(obs_dim + config.noise_dim, n_actions, config.hidden_units), init_rng);
  discriminator_ = DenseNet::glorot(
      DenseNet::preset_sizes(1 + obs_dim + n_actions, 1, config.hidden_units), init_rng);
  target_ = generator_;
  generator_opt_ = OptState(generator_.num_params());
  discriminator_opt_ = OptState(discriminator_.num_params());
}

GanQAgent::GanQAgent(const GanQConfig& config, DenseNet generator, DenseNet discriminator,
                     int obs_dim, int n_actions, double value_scale)
    : config_(config),
      obs_dim_(obs_dim),
      n_actions_(n_actions),
      value_scale_(value_scale),
      generator_(std::move(generator)),
      discriminator_(std::move(discriminator)) {
  config_.validate();
  if (generator_.input_dim() != obs_dim + config.noise_dim || generator_.output_dim() != n_actions) {
    throw std::invalid_argument("GanQAgent: generator shape does not match (features + noise) -> actions");
  }
  if (discriminator_.input_dim() != 1 + obs_dim + n_actions || discriminator_.output_dim() != 1) {
    throw std::invalid_argument("GanQAgent: discriminator shape does not match (x, features, action) -> 1");
  }
  if (!(value_scale > 0.0)) throw std::invalid_argument("GanQAgent: value_scale must be positive");
  target_ = generator_;
  generator_opt_ = OptState(generator_.num_params());
  discriminator_opt_ = OptState(discriminator_.num_params());
}

Eigen::VectorXd GanQAgent::generator_values(const Observation& obs,
                                            const Eigen::VectorXd& z) const {
  return value_scale_ * generator_.forward(concat(obs, z));
}

Eigen::VectorXd GanQAgent::generator_values(const Observation& obs, Rng& rng) const {
  return generator_values(obs, Eigen::VectorXd(draw_noise(config_.noise_dim, 1, rng)));
}

Eigen::MatrixXd GanQAgent::generator_values_batch(const Eigen::MatrixXd& features,
                                                  Rng& rng) const {
  Eigen::MatrixXd inputs(obs_dim_ + config_.noise_dim, features.cols());
  inputs.topRows(obs_dim_) = features;
  inputs.bottomRows(config_.noise_dim) = draw_noise(config_.noise_dim, features.cols(), rng);
  return value_scale_ * generator_.forward_batch(inputs);
}

int GanQAgent::select_action(const Observation& obs, double epsilon, Rng& rng) const {
  if (epsilon > 0.0 && rng.bernoulli(epsilon)) {
    return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_actions_)));
  }
  const Eigen::VectorXd values = generator_values(obs, rng);
  return argmax_action(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

double GanQAgent::bellman_target(const Transition& t, const Eigen::VectorXd& z) const {
  if (t.terminal) return t.reward;
  const DenseNet& net = config_.use_target_network ? target_ : generator_;
  const Eigen::VectorXd next = net.forward(concat(t.next_obs, z));
  return t.reward + config_.gamma * value_scale_ * next.maxCoeff();
}

double GanQAgent::bellman_target(const Transition& t, Rng& rng) const {
  if (t.terminal) return t.reward;
  return bellman_target(t, Eigen::VectorXd(draw_noise(config_.noise_dim, 1, rng)));
}

Eigen::MatrixXd GanQAgent::generator_inputs(const Batch& batch, bool next,
                                            const Eigen::MatrixXd& z) const {
  const auto m = static_cast<Eigen::Index>(batch.size());
  if (z.rows() != config_.noise_dim || z.cols() != m) {
    throw std::invalid_argument("generator noise has the wrong shape");
  }
  Eigen::MatrixXd inputs(obs_dim_ + config_.noise_dim, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Observation& obs = next ? batch[j]->next_obs : batch[j]->obs;
    inputs.col(j).head(obs_dim_) = features_of(obs);
  }
  inputs.bottomRows(config_.noise_dim) = z;
  return inputs;
}

Eigen::MatrixXd GanQAgent::discriminator_inputs(const Batch& batch,
                                                const Eigen::RowVectorXd& x) const {
  const auto m = static_cast<Eigen::Index>(batch.size());
  Eigen::MatrixXd inputs = Eigen::MatrixXd::Zero(1 + obs_dim_ + n_actions_, m);
  inputs.row(0) = x;
  for (Eigen::Index j = 0; j < m; ++j) {
    inputs.col(j).segment(1, obs_dim_) = features_of(batch[j]->obs);
    inputs(1 + obs_dim_ + batch[j]->action, j) = 1.0;
  }
  return inputs;
}

Eigen::RowVectorXd GanQAgent::normalized_targets(const Batch& batch,
                                                 const Eigen::MatrixXd& z) const {
  const auto m = static_cast<Eigen::Index>(batch.size());
  const DenseNet& net = config_.use_target_network ? target_ : generator_;
  const Eigen::MatrixXd next = net.forward_batch(generator_inputs(batch, true, z));
  Eigen::RowVectorXd y(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    y(j) = batch[j]->reward / value_scale_;
    if (!batch[j]->terminal) y(j) += config_.gamma * next.col(j).maxCoeff();
  }
  return y;
}

LossGrad GanQAgent::discriminator_loss_grad(const Batch& batch, const DiscriminatorNoise& noise,
                                            double lambda, bool include_penalty_path) const {
  check_batch(batch);
  if (lambda < 0.0) throw std::invalid_argument("discriminator update: lambda must be >= 0");
  const auto m = static_cast<Eigen::Index>(batch.size());
  if (noise.mix.size() != m) throw std::invalid_argument("discriminator noise has the wrong shape");
  const double inv_m = 1.0 / static_cast<double>(m);

  const Eigen::RowVectorXd y = normalized_targets(batch, noise.z_target);
  const Eigen::MatrixXd generated = generator_.forward_batch(generator_inputs(batch, false, noise.z_gen));
  Eigen::RowVectorXd x_gen(m);
  for (Eigen::Index j = 0; j < m; ++j) x_gen(j) = generated(batch[j]->action, j);

  // Generated samples in the first m columns, Bellman targets in the rest.
  const Eigen::MatrixXd fake_inputs = discriminator_inputs(batch, x_gen);
  Eigen::MatrixXd inputs(fake_inputs.rows(), 2 * m);
  inputs.leftCols(m) = fake_inputs;
  inputs.rightCols(m) = fake_inputs;
  inputs.row(0).tail(m) = y;

  DenseNet::Tape tape;
  const Eigen::MatrixXd scores = discriminator_.forward_batch(inputs, &tape);
  Eigen::MatrixXd upstream(1, 2 * m);
  upstream.leftCols(m).setConstant(inv_m);
  upstream.rightCols(m).setConstant(-inv_m);

  LossGrad result;
  result.grad = ParamVector::Zero(discriminator_.num_params());
  discriminator_.backward(tape, upstream, result.grad);
  result.loss = (scores.leftCols(m).sum() - scores.rightCols(m).sum()) * inv_m;

  if (include_penalty_path) {
    Eigen::MatrixXd mixed = fake_inputs;
    mixed.row(0) = noise.mix.transpose().cwiseProduct(y) +
                   (1.0 - noise.mix.transpose().array()).matrix().cwiseProduct(x_gen);
    const Eigen::VectorXd penalties =
        discriminator_.penalty_backward_batch(mixed, 0, lambda, inv_m, result.grad);
    result.loss += penalties.sum() * inv_m;
  }
  return result;
}

LossGrad GanQAgent::generator_loss_grad(const Batch& batch, const Eigen::MatrixXd& z) const {
  check_batch(batch);
  const auto m = static_cast<Eigen::Index>(batch.size());
  const double inv_m = 1.0 / static_cast<double>(m);

  DenseNet::Tape gen_tape;
  const Eigen::MatrixXd generated = generator_.forward_batch(generator_inputs(batch, false, z), &gen_tape);
  Eigen::RowVectorXd x_gen(m);
  for (Eigen::Index j = 0; j < m; ++j) x_gen(j) = generated(batch[j]->action, j);

  DenseNet::Tape disc_tape;
  const Eigen::MatrixXd scores =
      discriminator_.forward_batch(discriminator_inputs(batch, x_gen), &disc_tape);
  const Eigen::MatrixXd input_adj =
      discriminator_.backward_inputs(disc_tape, Eigen::MatrixXd::Constant(1, m, -inv_m));

  Eigen::MatrixXd upstream = Eigen::MatrixXd::Zero(n_actions_, m);
  for (Eigen::Index j = 0; j < m; ++j) upstream(batch[j]->action, j) = input_adj(0, j);

  LossGrad result;
  result.grad = ParamVector::Zero(generator_.num_params());
  generator_.backward(gen_tape, upstream, result.grad);
  result.loss = -scores.sum() * inv_m;
  return result;
}

double GanQAgent::discriminator_update(const Batch& batch, Rng& rng, double lambda, double alpha) {
  check_batch(batch);
  const auto noise = DiscriminatorNoise::draw(config_.noise_dim, batch.size(), rng);
  const LossGrad lg = discriminator_loss_grad(batch, noise, lambda);
  if (std::isfinite(lg.loss)) rmsprop_step(discriminator_.params(), lg.grad, discriminator_opt_, alpha);
  return lg.loss;
}

double GanQAgent::generator_update(const Batch& batch, Rng& rng, double alpha) {
  check_batch(batch);
  const LossGrad lg = generator_loss_grad(batch, draw_noise(config_.noise_dim, batch.size(), rng));
  if (std::isfinite(lg.loss)) rmsprop_step(generator_.params(), lg.grad, generator_opt_, alpha);
  return lg.loss;
}

void GanQAgent::sync_target() { target_ = generator_; }

// ---------------------------------------------------------------------------
// DqnAgent

DqnAgent::DqnAgent(int obs_dim, int n_actions, const GanQConfig& config, double value_scale,
                   Rng& init_rng)
    : config_(config), obs_dim_(obs_dim), n_actions_(n_actions), value_scale_(value_scale) {
  config_.validate();
  if (!(value_scale > 0.0)) throw std::invalid_argument("DqnAgent: value_scale must be positive");
  network_ = DenseNet::glorot(DenseNet::preset_sizes(obs_dim, n_actions, config.hidden_units),
                              init_rng);
  target_ = network_;
  opt_ = OptState(network_.num_params());
}

Eigen::VectorXd DqnAgent::q_values(const Observation& obs) const {
  return value_scale_ * network_.forward(features_of(obs));
}

int DqnAgent::select_action(const Observation& obs, double epsilon, Rng& rng) const {
  if (epsilon > 0.0 && rng.bernoulli(epsilon)) {
    return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_actions_)));
  }
  const Eigen::VectorXd q = q_values(obs);
  return argmax_action(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())));
}

double DqnAgent::bellman_target(const Transition& t) const {
  if (t.terminal) return t.reward;
  const DenseNet& net = config_.use_target_network ? target_ : network_;
  return t.reward + config_.gamma * value_scale_ * net.forward(features_of(t.next_obs)).maxCoeff();
}

LossGrad DqnAgent::loss_grad(const Batch& batch) const {
  check_batch(batch);
  const auto m = static_cast<Eigen::Index>(batch.size());
  Eigen::MatrixXd inputs(obs_dim_, m);
  Eigen::MatrixXd next_inputs(obs_dim_, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    inputs.col(j) = features_of(batch[j]->obs);
    next_inputs.col(j) = features_of(batch[j]->next_obs);
  }
  const DenseNet& bootstrap = config_.use_target_network ? target_ : network_;
  const Eigen::MatrixXd next = bootstrap.forward_batch(next_inputs);

  DenseNet::Tape tape;
  const Eigen::MatrixXd q = network_.forward_batch(inputs, &tape);
  Eigen::MatrixXd upstream = Eigen::MatrixXd::Zero(n_actions_, m);
  LossGrad result;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double y = batch[j]->reward / value_scale_;
    if (!batch[j]->terminal) y += config_.gamma * next.col(j).maxCoeff();
    const double err = q(batch[j]->action, j) - y;
    result.loss += err * err * inv_m;
    upstream(batch[j]->action, j) = 2.0 * err * inv_m;
  }
  result.grad = ParamVector::Zero(network_.num_params());
  network_.backward(tape, upstream, result.grad);
  return result;
}

double DqnAgent::update(const Batch& batch, double alpha) {
  const LossGrad lg = loss_grad(batch);
  if (std::isfinite(lg.loss)) rmsprop_step(network_.params(), lg.grad, opt_, alpha);
  return lg.loss;
}

void DqnAgent::sync_target() { target_ = network_; }

// ---------------------------------------------------------------------------
// Diagnostics

std::vector<DiagnosticRecord> distribution_diagnostic(const GanQAgent& agent,
                                                      const Environment& env, int n_samples,
                                                      Rng& rng) {
  if (!env.is_tabular()) throw std::logic_error("distribution_diagnostic: tabular environments only");
  if (n_samples < 1) throw std::invalid_argument("distribution_diagnostic: n_samples must be >= 1");
  const TabularMdp mdp = env.tabular_dynamics();
  const int n_obs = env.n_states();
  const double gamma = agent.config().gamma;
  const int horizon = effective_horizon(gamma, 1e-3);

  const auto one_hot_batch = [&](const std::vector<int>& states) {
    Eigen::MatrixXd features = Eigen::MatrixXd::Zero(n_obs, static_cast<Eigen::Index>(states.size()));
    for (std::size_t j = 0; j < states.size(); ++j) features(states[j], static_cast<Eigen::Index>(j)) = 1.0;
    return features;
  };
  const auto sample_next = [&](int s, int a) {
    double u = rng.uniform();
    int last = s;
    for (int s2 = 0; s2 < mdp.n_states; ++s2) {
      const double p = mdp.p(s, a, s2);
      if (p <= 0.0) continue;
      last = s2;
      u -= p;
      if (u < 0.0) return s2;
    }
    return last;
  };

  std::vector<DiagnosticRecord> records;
  for (int s = 0; s < n_obs; ++s) {
    if (mdp.is_terminal(s)) continue;
    const std::vector<int> start(static_cast<std::size_t>(n_samples), s);
    const Eigen::MatrixXd generated = agent.generator_values_batch(one_hot_batch(start), rng);
    for (int a = 0; a < mdp.n_actions; ++a) {
      std::vector<double> gen_samples(static_cast<std::size_t>(n_samples));
      for (int j = 0; j < n_samples; ++j) gen_samples[j] = generated(a, j);

      // Lockstep rollouts: every rollout takes `a` first, then the greedy
      // action of a fresh generator sample.
      std::vector<int> states = start;
      std::vector<int> actions(static_cast<std::size_t>(n_samples), a);
      std::vector<double> returns(static_cast<std::size_t>(n_samples), 0.0);
      std::vector<char> active(static_cast<std::size_t>(n_samples), 1);
      double discount = 1.0;
      for (int t = 0; t < horizon; ++t) {
        std::vector<int> live;
        for (int j = 0; j < n_samples; ++j) {
          if (!active[j]) continue;
          returns[j] += discount * mdp.r(states[j], actions[j]);
          states[j] = sample_next(states[j], actions[j]);
          if (mdp.is_terminal(states[j])) {
            active[j] = 0;
          } else {
            live.push_back(j);
          }
        }
        discount *= gamma;
        if (live.empty() || t + 1 == horizon) break;
        std::vector<int> live_states;
        live_states.reserve(live.size());
        for (int j : live) live_states.push_back(states[j]);
        const Eigen::MatrixXd values = agent.generator_values_batch(one_hot_batch(live_states), rng);
        for (std::size_t k = 0; k < live.size(); ++k) {
          actions[live[k]] = argmax_column(values, static_cast<Eigen::Index>(k));
        }
      }
      DiagnosticRecord record;
      record.state = s;
      record.action = a;
      record.w1 = wasserstein_empirical(gen_samples, returns, 1.0);
      records.push_back(record);
    }
  }
  return records;
}

// ---------------------------------------------------------------------------
// Training loops

namespace {

template <typename Agent, typename UpdateRound>
TrainLog run_deep_loop(const EnvSpec& env_spec, const GanQConfig& config, Agent& agent,
                       UpdateRound&& update_round, bool diagnostics,
                       const EpisodeCallback& on_episode) {
  const auto start_time = std::chrono::steady_clock::now();
  auto env = build_env(env_spec, config.seed);
  Rng act_rng(config.seed, streams::kAgent);
  Rng replay_rng(config.seed, streams::kReplay);
  Rng diag_rng(config.seed, streams::kDiagnostic);
  ReplayBuffer buffer(static_cast<std::size_t>(config.buffer_capacity));
  EpsilonSchedule schedule = EpsilonSchedule::linear_fraction(
      config.epsilon_start, config.epsilon_end, config.epsilon_decay_fraction, config.episodes,
      env_spec.max_steps);
  if (config.epsilon_decay_steps > 0) schedule.decay_steps = config.epsilon_decay_steps;

  TrainLog log;
  std::int64_t total_steps = 0;
  std::int64_t rounds = 0;
  for (int episode = 1; episode <= config.episodes && !log.diverged; ++episode) {
    const double alpha = lr_schedule(config.alpha0, episode - 1, config.lr_decay_k);
    EpisodeRecord record;
    record.seed = static_cast<std::int64_t>(config.seed);
    record.episode = episode;
    record.alpha = alpha;
    Observation obs = env->reset();
    while (true) {
      const double epsilon = schedule.value(total_steps);
      const int action = agent.select_action(obs, epsilon, act_rng);
      StepResult step = env->step(action);
      buffer.push(Transition{obs, action, step.reward, step.obs, step.terminal});
      ++total_steps;
      record.reward += step.reward;
      ++record.steps;
      record.epsilon = epsilon;

      if (buffer.size() >= static_cast<std::size_t>(config.learning_starts) &&
          total_steps % config.train_every == 0) {
        const double loss = update_round(buffer, replay_rng, alpha);
        if (!std::isfinite(loss)) {
          log.diverged = true;
          log.divergence_message = "non-finite loss at episode " + std::to_string(episode) +
                                   ", step " + std::to_string(total_steps);
        }
        ++rounds;
        if (config.use_target_network && rounds % config.target_sync_period == 0) {
          agent.sync_target();
        }
      }
      obs = std::move(step.obs);
      if (step.done() || log.diverged) {
        record.truncated = step.truncated;
        break;
      }
    }
    if constexpr (std::is_same_v<Agent, GanQAgent>) {
      if (diagnostics && !log.diverged && config.diag_every > 0 &&
          episode % config.diag_every == 0) {
        auto cells = distribution_diagnostic(agent, *env, config.diag_samples, diag_rng);
        double worst = 0.0;
        for (auto& cell : cells) {
          cell.seed = record.seed;
          cell.episode = episode;
          worst = std::max(worst, cell.w1);
          log.diagnostics.push_back(cell);
        }
        record.w1_diag = worst;
      }
    }
    log.episodes.push_back(record);
    if (on_episode && !on_episode(record)) break;
  }
  log.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return log;
}

EnvSpec resolve_spec(const EnvSpec& env_spec, const GanQConfig& config) {
  EnvSpec spec = env_spec;
  if (config.max_steps > 0) spec.max_steps = config.max_steps;
  return spec;
}

}  // namespace

GanQRun train_gan_q(const EnvSpec& env_spec, const GanQConfig& config,
                    const EpisodeCallback& on_episode) {
  config.validate();
  const EnvSpec spec = resolve_spec(env_spec, config);
  const auto probe = build_env(spec, config.seed);
  const double scale =
      config.value_scale > 0.0 ? config.value_scale : default_value_scale(*probe, config.gamma);
  Rng init_rng(config.seed, streams::kInit);
  GanQRun run{TrainLog{}, GanQAgent(probe->obs_dim(), probe->n_actions(), config, scale, init_rng)};

  auto update_round = [&](const ReplayBuffer& buffer, Rng& rng, double alpha) {
    double worst = 0.0;
    const auto m = static_cast<std::size_t>(config.batch_size);
    for (int i = 0; i < config.n_disc; ++i) {
      const double loss = run.agent.discriminator_update(buffer.sample(m, rng), rng, config.lambda, alpha);
      if (!std::isfinite(loss)) return loss;
      worst = std::max(worst, std::abs(loss));
    }
    for (int i = 0; i < config.n_gen; ++i) {
      const double loss = run.agent.generator_update(buffer.sample(m, rng), rng, alpha);
      if (!std::isfinite(loss)) return loss;
      worst = std::max(worst, std::abs(loss));
    }
    return worst;
  };
  run.log = run_deep_loop(spec, config, run.agent, update_round, probe->is_tabular(), on_episode);
  return run;
}

DqnRun train_dqn(const EnvSpec& env_spec, const GanQConfig& config,
                 const EpisodeCallback& on_episode) {
  config.validate();
  const EnvSpec spec = resolve_spec(env_spec, config);
  const auto probe = build_env(spec, config.seed);
  const double scale =
      config.value_scale > 0.0 ? config.value_scale : default_value_scale(*probe, config.gamma);
  Rng init_rng(config.seed, streams::kInit);
  DqnRun run{TrainLog{}, DqnAgent(probe->obs_dim(), probe->n_actions(), config, scale, init_rng)};

  auto update_round = [&](const ReplayBuffer& buffer, Rng& rng, double alpha) {
    return run.agent.update(buffer.sample(static_cast<std::size_t>(config.batch_size), rng), alpha);
  };
  run.log = run_deep_loop(spec, config, run.agent, update_round, false, on_episode);
  return run;
}

}  // namespace ganq
