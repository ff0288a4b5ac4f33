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

#ifndef GANQ_TABULAR_AGENTS_HPP_
#define GANQ_TABULAR_AGENTS_HPP_

#include <cstdint>
#include <optional>

#include "ganq/environments.hpp"
#include "ganq/exact_solvers.hpp"
#include "ganq/train_log.hpp"

namespace ganq {

// Linear decay from `start` to `end` over `decay_steps`, then constant.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  std::int64_t decay_steps = 0;

  double value(std::int64_t step) const;
  // Decay over `fraction` of episodes * max_steps environment steps.
  static EpsilonSchedule linear_fraction(double start, double end, double fraction, int episodes,
                                         int max_steps);
};

// Exploration on the tabular presets decays over a fixed number of steps.
inline constexpr std::int64_t kTabularEpsilonDecaySteps = 1000;

enum class TabularKind { kQ, kDq };

struct TabularAgentConfig {
  double alpha = 0.1;
  double gamma = 0.95;
  EpsilonSchedule epsilon;
  int episodes = 300;
  std::uint64_t seed = 0;
  int n_atoms = 51;

  // alpha 0.1; epsilon 1.0 -> 0.05 over kTabularEpsilonDecaySteps steps.
  static TabularAgentConfig preset(const EnvSpec& env, int episodes = 300);
};

// q(s,a) += alpha (target - q(s,a)), target = r (terminal) or
// r + gamma max_a' q(s',a').
void q_learning_update(QTable& q, const Transition& t, double alpha, double gamma);

// Z(s,a) <- (1 - alpha) Z(s,a) + alpha Proj[r + gamma Z(s', a*)], with a*
// the greedy action by expected value; a Dirac at r for terminal steps.
// Throws std::invalid_argument if Z(s,a) is not normalized.
void dq_learning_update(ValueDistTable& z, const Transition& t, double alpha, double gamma);

// Ties go to the lowest action index.
int greedy_action(const QTable& q, int s);
int greedy_action(const ValueDistTable& z, int s);

struct TabularRun {
  TrainLog log;
  QTable q;                         // Q-learning table, or expected values of Z
  std::optional<ValueDistTable> z;  // dQ-learning only
};

TabularRun run_tabular(const EnvSpec& env_spec, const TabularAgentConfig& config,
                       TabularKind kind, const EpisodeCallback& on_episode = {});

// Greedy rollout from reset; returns the number of steps until termination
// or -1 if the episode is truncated first.
int greedy_steps_to_goal(const EnvSpec& env_spec, const QTable& q);

}  // namespace ganq

#endif  // GANQ_TABULAR_AGENTS_HPP_
