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

#ifndef GANQ_RUN_CONFIG_HPP_
#define GANQ_RUN_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ganq/deep_agents.hpp"
#include "ganq/environments.hpp"
#include "ganq/tabular_agents.hpp"

namespace ganq {

enum class AgentKind { kQ, kDq, kDqn, kGanDqn };

// "q", "dq", "dqn", "gan-dqn".
std::string_view agent_name(AgentKind kind);
AgentKind parse_agent_name(std::string_view name);
bool is_tabular_agent(AgentKind kind);

// One experiment: an environment, an agent and a list of seeds. Every field
// has a default; `defaults(env, agent)` fills in the per-environment presets.
//
// Text format, one `key = value` per line, `#` starts a comment:
//
//   env = two-state
//   agent = gan-dqn
//   seeds = 0, 1, 2
//   episodes = 300
//   [cartpole]
//   hidden_units = 128
//
// Keys under `[env-name]` apply only when `env` names that environment.
// Unknown keys, unknown sections and repeated keys are errors.
struct RunConfig {
  EnvKind env = EnvKind::kTwoState;
  AgentKind agent = AgentKind::kGanDqn;
  std::vector<std::uint64_t> seeds = {0};
  std::string output_dir = "runs";
  bool plot = false;
  bool save_checkpoints = false;

  int episodes = 300;
  int max_steps = 25;
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.2;
  std::int64_t epsilon_decay_steps = kTabularEpsilonDecaySteps;

  // Tabular agents.
  double alpha = 0.1;
  int n_atoms = 51;

  // Deep agents.
  int noise_dim = 8;
  int hidden_units = 64;
  int batch_size = 32;
  int n_disc = 5;
  int n_gen = 1;
  double lambda = 0.1;
  double alpha0 = 1e-3;
  double lr_decay_k = 500.0;
  bool use_target_network = true;
  int target_sync_period = 100;
  std::int64_t buffer_capacity = 100'000;
  int learning_starts = 32;
  int train_every = 1;
  double value_scale = 0.0;
  int diag_every = 10;
  int diag_samples = 200;

  static RunConfig defaults(EnvKind env, AgentKind agent);

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  EnvSpec env_spec() const;
  TabularAgentConfig tabular_config(std::uint64_t seed) const;
  GanQConfig deep_config(std::uint64_t seed) const;

  bool operator==(const RunConfig&) const = default;
};

// Throws std::invalid_argument with the line number on malformed input.
// Field ranges are left to validate(), so overrides can still be applied.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

// Every field, one per line, in a fixed order; doubles round-trip exactly.
std::string serialize_run_config(const RunConfig& config);

// Sets one field from its text form, as the parser does.
void set_config_field(RunConfig& config, std::string_view key, std::string_view value);

// 64-bit FNV-1a of the serialized config, as 16 lowercase hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace ganq

#endif  // GANQ_RUN_CONFIG_HPP_
