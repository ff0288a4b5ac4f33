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

#include "ganq/environments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ganq {

namespace {

constexpr EnvKind kAllKinds[] = {EnvKind::kTwoState, EnvKind::kTwoGoalChain,
                                 EnvKind::kGridworld, EnvKind::kCartPole,
                                 EnvKind::kAcrobot};

Observation one_hot(int index, int width) {
  Observation obs;
  obs.features.assign(static_cast<std::size_t>(width), 0.0);
  obs.features[static_cast<std::size_t>(index)] = 1.0;
  obs.state_id = index;
  return obs;
}

double wrap_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x + std::numbers::pi, two_pi);
  if (x < 0) x += two_pi;
  return x - std::numbers::pi;
}

}  // namespace

std::string_view env_name(EnvKind kind) {
  switch (kind) {
    case EnvKind::kTwoState: return "two-state";
    case EnvKind::kTwoGoalChain: return "2g-chain";
    case EnvKind::kGridworld: return "gridworld";
    case EnvKind::kCartPole: return "cartpole";
    case EnvKind::kAcrobot: return "acrobot";
  }
  throw std::invalid_argument("unknown environment kind");
}

EnvKind parse_env_name(std::string_view name) {
  for (EnvKind kind : kAllKinds) {
    if (env_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown environment '" + std::string(name) +
                              "' (expected two-state, 2g-chain, gridworld, cartpole or acrobot)");
}

bool is_tabular_kind(EnvKind kind) {
  return kind == EnvKind::kTwoState || kind == EnvKind::kTwoGoalChain ||
         kind == EnvKind::kGridworld;
}

EnvSpec EnvSpec::preset(EnvKind kind) {
  switch (kind) {
    case EnvKind::kTwoState: return {kind, 0.95, 25};
    case EnvKind::kTwoGoalChain: return {kind, 0.6, 50};
    case EnvKind::kGridworld: return {kind, 0.9, 100};
    case EnvKind::kCartPole: return {kind, 0.99, 200};
    case EnvKind::kAcrobot: return {kind, 0.99, 500};
  }
  throw std::invalid_argument("unknown environment kind");
}

// ---------------------------------------------------------------------------
// TabularMdp

TabularMdp::TabularMdp(int n_states_, int n_actions_, double gamma_)
    : n_states(n_states_),
      n_actions(n_actions_),
      transitions(static_cast<std::size_t>(n_states_) * n_actions_ * n_states_, 0.0),
      rewards(static_cast<std::size_t>(n_states_) * n_actions_, 0.0),
      gamma(gamma_) {
  if (n_states_ <= 0 || n_actions_ <= 0) {
    throw std::invalid_argument("TabularMdp: state and action counts must be positive");
  }
}

bool TabularMdp::is_terminal(int s) const {
  return std::find(terminal_states.begin(), terminal_states.end(), s) != terminal_states.end();
}

void TabularMdp::validate() const {
  if (n_states <= 0 || n_actions <= 0) throw std::invalid_argument("TabularMdp: empty");
  if (transitions.size() != static_cast<std::size_t>(n_states) * n_actions * n_states ||
      rewards.size() != static_cast<std::size_t>(n_states) * n_actions) {
    throw std::invalid_argument("TabularMdp: table sizes do not match dimensions");
  }
  for (int s = 0; s < n_states; ++s) {
    for (int a = 0; a < n_actions; ++a) {
      double total = 0.0;
      for (int s2 = 0; s2 < n_states; ++s2) {
        const double prob = p(s, a, s2);
        if (!(prob >= 0.0)) {
          throw std::invalid_argument("TabularMdp: negative transition probability");
        }
        total += prob;
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("TabularMdp: transition row (" + std::to_string(s) + "," +
                                    std::to_string(a) + ") sums to " + std::to_string(total));
      }
      if (!std::isfinite(r(s, a))) throw std::invalid_argument("TabularMdp: non-finite reward");
    }
  }
  for (int t : terminal_states) {
    if (t < 0 || t >= n_states) throw std::invalid_argument("TabularMdp: terminal out of range");
    for (int a = 0; a < n_actions; ++a) {
      if (p(t, a, t) != 1.0 || r(t, a) != 0.0) {
        throw std::invalid_argument("TabularMdp: terminal states must be absorbing and unrewarded");
      }
    }
  }
  if (initial_states.empty()) throw std::invalid_argument("TabularMdp: no initial states");
  for (int s : initial_states) {
    if (s < 0 || s >= n_states) throw std::invalid_argument("TabularMdp: initial out of range");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("TabularMdp: gamma not in [0,1)");
}

TabularMdp two_state_mdp(double gamma) {
  // Actions: 0 = stay, 1 = switch.
  TabularMdp mdp(2, 2, gamma);
  mdp.p(0, 0, 0) = 1.0;
  mdp.r(0, 0) = 20.0;
  mdp.p(0, 1, 1) = 1.0;
  mdp.r(0, 1) = -10.0;
  mdp.p(1, 1, 0) = 1.0;
  mdp.r(1, 1) = -2.0;
  mdp.p(1, 0, 1) = 1.0;
  mdp.r(1, 0) = -0.5;
  mdp.initial_states = {0};
  return mdp;
}

TabularMdp two_goal_chain_mdp(double gamma) {
  // Actions: 0 = left, 1 = right. Pushing outward at either end keeps the
  // agent in the goal cell, which pays +1 and ends the episode (sink).
  const int sink = kChainCells;
  TabularMdp mdp(kChainCells + 1, 2, gamma);
  for (int s = 0; s < kChainCells; ++s) {
    const int left = s - 1;
    const int right = s + 1;
    if (s == 0) {
      mdp.p(s, 0, sink) = 1.0;
      mdp.r(s, 0) = 1.0;
    } else {
      mdp.p(s, 0, left) = 1.0;
    }
    if (s == kChainCells - 1) {
      mdp.p(s, 1, sink) = 1.0;
      mdp.r(s, 1) = 1.0;
    } else {
      mdp.p(s, 1, right) = 1.0;
    }
  }
  mdp.p(sink, 0, sink) = 1.0;
  mdp.p(sink, 1, sink) = 1.0;
  mdp.initial_states = {kChainStart};
  mdp.terminal_states = {sink};
  return mdp;
}

TabularMdp gridworld_mdp(double gamma) {
  constexpr int n = kGridSide * kGridSide;
  constexpr int goal = n - 1;
  constexpr int dr[4] = {-1, 1, 0, 0};
  constexpr int dc[4] = {0, 0, -1, 1};
  TabularMdp mdp(n, 4, gamma);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < 4; ++a) {
      if (s == goal) {
        mdp.p(s, a, s) = 1.0;
        continue;
      }
      const int row = s / kGridSide + dr[a];
      const int col = s % kGridSide + dc[a];
      const bool blocked = row < 0 || row >= kGridSide || col < 0 || col >= kGridSide;
      const int dest = blocked ? s : row * kGridSide + col;
      mdp.p(s, a, dest) = 1.0;
      mdp.r(s, a) = dest == goal ? 0.0 : -1.0;
    }
  }
  mdp.initial_states = {0};
  mdp.terminal_states = {goal};
  return mdp;
}

// ---------------------------------------------------------------------------
// Environment

Environment::Environment(double gamma, int max_steps, std::uint64_t seed,
                         std::optional<EnvKind> kind)
    : rng_(seed, streams::kEnvironment), gamma_(gamma), max_steps_(max_steps), kind_(kind) {
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0,1)");
}

int Environment::n_states() const {
  throw std::logic_error(std::string(name()) + " is not a tabular environment");
}

TabularMdp Environment::tabular_dynamics() const {
  throw std::logic_error(std::string(name()) + " has no tabular dynamics");
}

Observation Environment::reset_to_state(int) {
  throw std::logic_error(std::string(name()) + " cannot be reset to a tabular state");
}

Observation Environment::reset() {
  Observation obs = do_reset();
  begin_episode();
  return obs;
}

StepResult Environment::step(int action) {
  if (!active_) throw std::logic_error("step called on a finished episode; call reset()");
  if (action < 0 || action >= n_actions()) {
    throw std::out_of_range("action " + std::to_string(action) + " out of range for " +
                            std::string(name()));
  }
  StepResult result = do_step(action);
  ++steps_;
  if (!result.terminal && steps_ >= max_steps_) result.truncated = true;
  if (result.done()) active_ = false;
  return result;
}

// ---------------------------------------------------------------------------
// TabularEnv

TabularEnv::TabularEnv(TabularMdp mdp, int max_steps, std::uint64_t seed, std::string name,
                       std::optional<EnvKind> kind, int n_observed)
    : Environment(mdp.gamma, max_steps, seed, kind),
      mdp_(std::move(mdp)),
      name_(std::move(name)),
      n_observed_(n_observed < 0 ? mdp_.n_states : n_observed) {
  mdp_.validate();
  if (n_observed_ <= 0 || n_observed_ > mdp_.n_states) {
    throw std::invalid_argument("TabularEnv: observed state count out of range");
  }
  for (int s = n_observed_; s < mdp_.n_states; ++s) {
    if (!mdp_.is_terminal(s)) throw std::invalid_argument("TabularEnv: hidden states must be terminal");
  }
}

std::unique_ptr<Environment> TabularEnv::clone() const {
  return std::make_unique<TabularEnv>(*this);
}

Observation TabularEnv::observe(int state) const { return one_hot(state, n_observed_); }

Observation TabularEnv::do_reset() {
  const auto& init = mdp_.initial_states;
  state_ = init.size() == 1 ? init.front() : init[rng_.uniform_int(init.size())];
  return observe(state_);
}

Observation TabularEnv::reset_to_state(int state) {
  if (state < 0 || state >= n_observed_ || mdp_.is_terminal(state)) {
    throw std::out_of_range("reset_to_state: not a non-terminal observable state");
  }
  state_ = state;
  begin_episode();
  return observe(state_);
}

StepResult TabularEnv::do_step(int action) {
  const double u = rng_.uniform();
  double cumulative = 0.0;
  int next = -1;
  int last_positive = state_;
  for (int s2 = 0; s2 < mdp_.n_states; ++s2) {
    const double prob = mdp_.p(state_, action, s2);
    if (prob <= 0.0) continue;
    last_positive = s2;
    cumulative += prob;
    if (u < cumulative) {
      next = s2;
      break;
    }
  }
  if (next < 0) next = last_positive;  // rounding at the top of the row

  StepResult result;
  result.reward = mdp_.r(state_, action);
  result.terminal = mdp_.is_terminal(next);
  result.obs = observe(next < n_observed_ ? next : state_);
  state_ = next;
  return result;
}

// ---------------------------------------------------------------------------
// CartPole

namespace {
constexpr double kGravity = 9.8;
constexpr double kMassCart = 1.0;
constexpr double kMassPole = 0.1;
constexpr double kTotalMass = kMassCart + kMassPole;
constexpr double kHalfLength = 0.5;
constexpr double kPoleMassLength = kMassPole * kHalfLength;
constexpr double kForceMag = 10.0;
constexpr double kTau = 0.02;
}  // namespace

CartPoleEnv::CartPoleEnv(EnvSpec spec, std::uint64_t seed)
    : Environment(spec.gamma, spec.max_steps, seed, EnvKind::kCartPole), state_(4, 0.0) {}

std::unique_ptr<Environment> CartPoleEnv::clone() const {
  return std::make_unique<CartPoleEnv>(*this);
}

void CartPoleEnv::set_physical_state(const std::vector<double>& state) {
  if (state.size() != 4) throw std::invalid_argument("cartpole state has 4 components");
  state_ = state;
  begin_episode();
}

Observation CartPoleEnv::observe() const {
  Observation obs;
  obs.features = {state_[0] / kXThreshold, state_[1] / 3.0, state_[2] / kThetaThreshold,
                  state_[3] / 3.5};
  return obs;
}

Observation CartPoleEnv::do_reset() {
  for (double& v : state_) v = rng_.uniform(-0.05, 0.05);
  return observe();
}

StepResult CartPoleEnv::do_step(int action) {
  double x = state_[0], x_dot = state_[1], theta = state_[2], theta_dot = state_[3];
  const double force = action == 1 ? kForceMag : -kForceMag;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double temp = (force + kPoleMassLength * theta_dot * theta_dot * sin_t) / kTotalMass;
  const double theta_acc =
      (kGravity * sin_t - cos_t * temp) /
      (kHalfLength * (4.0 / 3.0 - kMassPole * cos_t * cos_t / kTotalMass));
  const double x_acc = temp - kPoleMassLength * theta_acc * cos_t / kTotalMass;
  x += kTau * x_dot;
  x_dot += kTau * x_acc;
  theta += kTau * theta_dot;
  theta_dot += kTau * theta_acc;
  state_ = {x, x_dot, theta, theta_dot};

  StepResult result;
  result.terminal = x < -kXThreshold || x > kXThreshold || theta < -kThetaThreshold ||
                    theta > kThetaThreshold;
  result.reward = 1.0;
  result.obs = observe();
  return result;
}

// ---------------------------------------------------------------------------
// Acrobot

namespace {
constexpr double kLink1 = 1.0;
constexpr double kMass1 = 1.0;
constexpr double kMass2 = 1.0;
constexpr double kCom1 = 0.5;
constexpr double kCom2 = 0.5;
constexpr double kMoi = 1.0;
constexpr double kMaxVel1 = 4.0 * std::numbers::pi;
constexpr double kMaxVel2 = 9.0 * std::numbers::pi;
constexpr double kAcrobotDt = 0.2;
constexpr int kAcrobotSubsteps = 4;
}  // namespace

AcrobotEnv::AcrobotEnv(EnvSpec spec, std::uint64_t seed)
    : Environment(spec.gamma, spec.max_steps, seed, EnvKind::kAcrobot), state_(4, 0.0) {}

std::unique_ptr<Environment> AcrobotEnv::clone() const {
  return std::make_unique<AcrobotEnv>(*this);
}

void AcrobotEnv::set_physical_state(const std::vector<double>& state) {
  if (state.size() != 4) throw std::invalid_argument("acrobot state has 4 components");
  state_ = state;
  begin_episode();
}

bool AcrobotEnv::tip_above_line() const {
  return -std::cos(state_[0]) - std::cos(state_[1] + state_[0]) > 1.0;
}

Observation AcrobotEnv::observe() const {
  Observation obs;
  obs.features = {std::cos(state_[0]), std::sin(state_[0]), std::cos(state_[1]),
                  std::sin(state_[1]), state_[2] / kMaxVel1, state_[3] / kMaxVel2};
  return obs;
}

Observation AcrobotEnv::do_reset() {
  for (double& v : state_) v = rng_.uniform(-0.1, 0.1);
  return observe();
}

StepResult AcrobotEnv::do_step(int action) {
  const double torque = static_cast<double>(action) - 1.0;
  const double dt = kAcrobotDt / kAcrobotSubsteps;
  double th1 = state_[0], th2 = state_[1], dth1 = state_[2], dth2 = state_[3];
  for (int i = 0; i < kAcrobotSubsteps; ++i) {
    const double d1 = kMass1 * kCom1 * kCom1 +
                      kMass2 * (kLink1 * kLink1 + kCom2 * kCom2 +
                                2.0 * kLink1 * kCom2 * std::cos(th2)) +
                      2.0 * kMoi;
    const double d2 = kMass2 * (kCom2 * kCom2 + kLink1 * kCom2 * std::cos(th2)) + kMoi;
    const double phi2 = kMass2 * kCom2 * kGravity * std::cos(th1 + th2 - std::numbers::pi / 2.0);
    const double phi1 = -kMass2 * kLink1 * kCom2 * dth2 * dth2 * std::sin(th2) -
                        2.0 * kMass2 * kLink1 * kCom2 * dth2 * dth1 * std::sin(th2) +
                        (kMass1 * kCom1 + kMass2 * kLink1) * kGravity *
                            std::cos(th1 - std::numbers::pi / 2.0) +
                        phi2;
    const double ddth2 =
        (torque + d2 / d1 * phi1 - kMass2 * kLink1 * kCom2 * dth1 * dth1 * std::sin(th2) - phi2) /
        (kMass2 * kCom2 * kCom2 + kMoi - d2 * d2 / d1);
    const double ddth1 = -(d2 * ddth2 + phi1) / d1;
    // Semi-implicit Euler: positions move with the updated velocities. The
    // explicit variant gains energy every substep and swings the tip up
    // under a random policy.
    dth1 = std::clamp(dth1 + dt * ddth1, -kMaxVel1, kMaxVel1);
    dth2 = std::clamp(dth2 + dt * ddth2, -kMaxVel2, kMaxVel2);
    th1 += dt * dth1;
    th2 += dt * dth2;
  }
  state_ = {wrap_angle(th1), wrap_angle(th2), dth1, dth2};

  StepResult result;
  result.terminal = tip_above_line();
  result.reward = result.terminal ? 0.0 : -1.0;
  result.obs = observe();
  return result;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Environment> build_env(const EnvSpec& spec, std::uint64_t seed) {
  if (spec.max_steps <= 0) throw std::invalid_argument("build_env: max_steps must be positive");
  switch (spec.kind) {
    case EnvKind::kTwoState:
      return std::make_unique<TabularEnv>(two_state_mdp(spec.gamma), spec.max_steps, seed,
                                          "two-state", spec.kind);
    case EnvKind::kTwoGoalChain:
      return std::make_unique<TabularEnv>(two_goal_chain_mdp(spec.gamma), spec.max_steps, seed,
                                          "2g-chain", spec.kind, kChainCells);
    case EnvKind::kGridworld:
      return std::make_unique<TabularEnv>(gridworld_mdp(spec.gamma), spec.max_steps, seed,
                                          "gridworld", spec.kind);
    case EnvKind::kCartPole:
      return std::make_unique<CartPoleEnv>(spec, seed);
    case EnvKind::kAcrobot:
      return std::make_unique<AcrobotEnv>(spec, seed);
  }
  throw std::invalid_argument("build_env: unknown environment kind");
}

}  // namespace ganq
