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

#ifndef GANQ_ENVIRONMENTS_HPP_
#define GANQ_ENVIRONMENTS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ganq/rng.hpp"

namespace ganq {

enum class EnvKind { kTwoState, kTwoGoalChain, kGridworld, kCartPole, kAcrobot };

// Preset names used in configs and on the command line:
// "two-state", "2g-chain", "gridworld", "cartpole", "acrobot".
std::string_view env_name(EnvKind kind);
EnvKind parse_env_name(std::string_view name);
bool is_tabular_kind(EnvKind kind);

struct EnvSpec {
  EnvKind kind = EnvKind::kTwoState;
  double gamma = 0.95;
  int max_steps = 25;

  // TwoState 0.95/25, TwoGoalChain 0.6/50, Gridworld 0.9/100,
  // CartPole 0.99/200, Acrobot 0.99/500.
  static EnvSpec preset(EnvKind kind);
};

struct Observation {
  std::vector<double> features;
  std::optional<int> state_id;  // present iff the environment is tabular

  bool operator==(const Observation&) const = default;
};

struct Transition {
  Observation obs;
  int action = 0;
  double reward = 0.0;
  Observation next_obs;
  // True only for genuine termination; a step-limit truncation is not
  // terminal and still bootstraps.
  bool terminal = false;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;

  bool done() const { return terminal || truncated; }
};

// Finite MDP with explicit dynamics. Rewards are deterministic given (s, a).
struct TabularMdp {
  int n_states = 0;
  int n_actions = 0;
  std::vector<double> transitions;  // [s][a][s'] row-major
  std::vector<double> rewards;      // [s][a]
  std::vector<int> initial_states;
  std::vector<int> terminal_states;
  double gamma = 0.0;

  TabularMdp() = default;
  TabularMdp(int n_states, int n_actions, double gamma);

  double& p(int s, int a, int s2) {
    return transitions[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
  }
  double p(int s, int a, int s2) const {
    return transitions[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
  }
  double& r(int s, int a) { return rewards[static_cast<std::size_t>(s) * n_actions + a]; }
  double r(int s, int a) const { return rewards[static_cast<std::size_t>(s) * n_actions + a]; }

  bool is_terminal(int s) const;
  // Throws std::invalid_argument on malformed rows, reward tables or
  // non-absorbing terminal states.
  void validate() const;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view name() const = 0;
  virtual int n_actions() const = 0;
  virtual int obs_dim() const = 0;
  virtual bool is_tabular() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  // Number of observable tabular states (one-hot width). Throws for control
  // environments.
  virtual int n_states() const;
  virtual TabularMdp tabular_dynamics() const;
  // Starts an episode from an arbitrary MDP state (tabular only).
  virtual Observation reset_to_state(int state);

  Observation reset();
  StepResult step(int action);

  double gamma() const { return gamma_; }
  int max_steps() const { return max_steps_; }
  int steps_taken() const { return steps_; }
  bool episode_active() const { return active_; }
  std::optional<EnvKind> kind() const { return kind_; }

 protected:
  Environment(double gamma, int max_steps, std::uint64_t seed, std::optional<EnvKind> kind);

  virtual Observation do_reset() = 0;
  // Returns observation, reward and the termination flag.
  virtual StepResult do_step(int action) = 0;

  void begin_episode() {
    steps_ = 0;
    active_ = true;
  }

  Rng rng_;

 private:
  double gamma_;
  int max_steps_;
  std::optional<EnvKind> kind_;
  int steps_ = 0;
  bool active_ = false;
};

// Environment backed by an explicit TabularMdp. MDP states with index
// >= n_observed are hidden absorbing sinks; transitions into them terminate
// the episode and report the current state's observation as next_obs.
class TabularEnv final : public Environment {
 public:
  TabularEnv(TabularMdp mdp, int max_steps, std::uint64_t seed, std::string name,
             std::optional<EnvKind> kind = std::nullopt, int n_observed = -1);

  std::string_view name() const override { return name_; }
  int n_actions() const override { return mdp_.n_actions; }
  int obs_dim() const override { return n_observed_; }
  bool is_tabular() const override { return true; }
  int n_states() const override { return n_observed_; }
  std::unique_ptr<Environment> clone() const override;
  TabularMdp tabular_dynamics() const override { return mdp_; }
  Observation reset_to_state(int state) override;

  int current_state() const { return state_; }
  Observation observe(int state) const;

 private:
  Observation do_reset() override;
  StepResult do_step(int action) override;

  TabularMdp mdp_;
  std::string name_;
  int n_observed_;
  int state_ = 0;
};

// Cart-pole balancing: Euler integration at 0.02 s, force +-10 N,
// termination at |theta| > 12 degrees or |x| > 2.4, reward +1 per step.
class CartPoleEnv final : public Environment {
 public:
  CartPoleEnv(EnvSpec spec, std::uint64_t seed);

  std::string_view name() const override { return "cartpole"; }
  int n_actions() const override { return 2; }
  int obs_dim() const override { return 4; }
  bool is_tabular() const override { return false; }
  std::unique_ptr<Environment> clone() const override;

  static constexpr double kThetaThreshold = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr double kXThreshold = 2.4;

  // x, x_dot, theta, theta_dot
  const std::vector<double>& physical_state() const { return state_; }
  void set_physical_state(const std::vector<double>& state);

 private:
  Observation do_reset() override;
  StepResult do_step(int action) override;
  Observation observe() const;

  std::vector<double> state_;
};

// Two-link acrobot with torque in {-1, 0, +1}. Sutton-Barto book dynamics
// integrated by four semi-implicit Euler substeps of 0.05 s per 0.2 s
// action. Reward -1
// per step; terminates when the tip rises one link length above the pivot.
class AcrobotEnv final : public Environment {
 public:
  AcrobotEnv(EnvSpec spec, std::uint64_t seed);

  std::string_view name() const override { return "acrobot"; }
  int n_actions() const override { return 3; }
  int obs_dim() const override { return 6; }
  bool is_tabular() const override { return false; }
  std::unique_ptr<Environment> clone() const override;

  // theta1, theta2, theta1_dot, theta2_dot
  const std::vector<double>& physical_state() const { return state_; }
  void set_physical_state(const std::vector<double>& state);
  bool tip_above_line() const;

 private:
  Observation do_reset() override;
  StepResult do_step(int action) override;
  Observation observe() const;

  std::vector<double> state_;
};

// Exact dynamics of the tabular presets.
TabularMdp two_state_mdp(double gamma = 0.95);
TabularMdp two_goal_chain_mdp(double gamma = 0.6);
TabularMdp gridworld_mdp(double gamma = 0.9);

// Chain layout: cells 0..9, start 5, goals 0 and 9, hidden sink 10.
inline constexpr int kChainCells = 10;
inline constexpr int kChainStart = 5;
// Gridworld: 4x4 interior of a walled 6x6 grid, start interior (0,0),
// goal interior (3,3). Actions: up, down, left, right.
inline constexpr int kGridSide = 4;

std::unique_ptr<Environment> build_env(const EnvSpec& spec, std::uint64_t seed);

}  // namespace ganq

#endif  // GANQ_ENVIRONMENTS_HPP_
