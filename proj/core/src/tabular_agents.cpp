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

#include "ganq/tabular_agents.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ganq {

double EpsilonSchedule::value(std::int64_t step) const {
  if (decay_steps <= 0 || step >= decay_steps) return end;
  const double frac = static_cast<double>(step) / static_cast<double>(decay_steps);
  return start + (end - start) * frac;
}

EpsilonSchedule EpsilonSchedule::linear_fraction(double start, double end, double fraction,
                                                 int episodes, int max_steps) {
  if (start < 0.0 || start > 1.0 || end < 0.0 || end > 1.0) {
    throw std::invalid_argument("epsilon schedule endpoints must lie in [0,1]");
  }
  EpsilonSchedule schedule;
  schedule.start = start;
  schedule.end = end;
  schedule.decay_steps = static_cast<std::int64_t>(
      std::llround(fraction * static_cast<double>(episodes) * static_cast<double>(max_steps)));
  return schedule;
}

TabularAgentConfig TabularAgentConfig::preset(const EnvSpec& env, int episodes) {
  TabularAgentConfig config;
  config.gamma = env.gamma;
  config.episodes = episodes;
  config.epsilon = EpsilonSchedule{1.0, 0.05, kTabularEpsilonDecaySteps};
  return config;
}

namespace {

int state_of(const Observation& obs) {
  if (!obs.state_id) throw std::invalid_argument("tabular agents need tabular observations");
  return *obs.state_id;
}

}  // namespace

void q_learning_update(QTable& q, const Transition& t, double alpha, double gamma) {
  const int s = state_of(t.obs);
  double target = t.reward;
  if (!t.terminal) {
    const auto row = q.row(state_of(t.next_obs));
    target += gamma * *std::max_element(row.begin(), row.end());
  }
  q(s, t.action) += alpha * (target - q(s, t.action));
}

int greedy_action(const QTable& q, int s) { return argmax_action(q.row(s)); }

int greedy_action(const ValueDistTable& z, int s) {
  int best = 0;
  double best_value = z.mean(s, 0);
  for (int a = 1; a < z.n_actions(); ++a) {
    const double v = z.mean(s, a);
    if (v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

void dq_learning_update(ValueDistTable& z, const Transition& t, double alpha, double gamma) {
  const int s = state_of(t.obs);
  auto cell = z.probs(s, t.action);
  double total = 0.0;
  for (double p : cell) total += p;
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("dq_learning_update: Z(s,a) is not normalized");
  }

  const auto& support = z.support();
  std::vector<double> target(support.size(), 0.0);
  if (t.terminal) {
    project_mass(support, t.reward, 1.0, target);
  } else {
    const int s2 = state_of(t.next_obs);
    const auto next = z.probs(s2, greedy_action(z, s2));
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (next[k] != 0.0) project_mass(support, t.reward + gamma * support[k], next[k], target);
    }
  }
  double mixed_total = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    cell[k] = (1.0 - alpha) * cell[k] + alpha * target[k];
    mixed_total += cell[k];
  }
  for (double& p : cell) p /= mixed_total;
}

TabularRun run_tabular(const EnvSpec& env_spec, const TabularAgentConfig& config,
                       TabularKind kind, const EpisodeCallback& on_episode) {
  if (!is_tabular_kind(env_spec.kind)) {
    throw std::invalid_argument("run_tabular: " + std::string(env_name(env_spec.kind)) +
                                " is not a tabular environment");
  }
  const auto start_time = std::chrono::steady_clock::now();
  auto env = build_env(env_spec, config.seed);
  Rng rng(config.seed, streams::kAgent);
  const int n_states = env->n_states();
  const int n_actions = env->n_actions();

  TabularRun run;
  run.q = QTable(n_states, n_actions);
  if (kind == TabularKind::kDq) {
    run.z.emplace(support_for_mdp(env->tabular_dynamics(), config.n_atoms), n_states, n_actions);
  }

  std::int64_t total_steps = 0;
  for (int episode = 1; episode <= config.episodes; ++episode) {
    Observation obs = env->reset();
    EpisodeRecord record;
    record.seed = static_cast<std::int64_t>(config.seed);
    record.episode = episode;
    record.alpha = config.alpha;
    while (true) {
      const double epsilon = config.epsilon.value(total_steps);
      const int s = *obs.state_id;
      int action = 0;
      if (rng.bernoulli(epsilon)) {
        action = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_actions)));
      } else {
        action = kind == TabularKind::kQ ? greedy_action(run.q, s) : greedy_action(*run.z, s);
      }
      StepResult step = env->step(action);
      const Transition transition{obs, action, step.reward, step.obs, step.terminal};
      if (kind == TabularKind::kQ) {
        q_learning_update(run.q, transition, config.alpha, config.gamma);
      } else {
        dq_learning_update(*run.z, transition, config.alpha, config.gamma);
      }
      ++total_steps;
      record.reward += step.reward;
      ++record.steps;
      record.epsilon = epsilon;
      obs = std::move(step.obs);
      if (step.done()) {
        record.truncated = step.truncated;
        break;
      }
    }
    run.log.episodes.push_back(record);
    if (on_episode && !on_episode(record)) break;
  }
  if (run.z) run.q = run.z->means();
  run.log.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return run;
}

int greedy_steps_to_goal(const EnvSpec& env_spec, const QTable& q) {
  auto env = build_env(env_spec, 0);
  Observation obs = env->reset();
  int steps = 0;
  while (true) {
    const StepResult step = env->step(greedy_action(q, *obs.state_id));
    ++steps;
    if (step.terminal) return steps;
    if (step.truncated) return -1;
    obs = step.obs;
  }
}

}  // namespace ganq
