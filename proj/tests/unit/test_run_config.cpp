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

#include "ganq/run_config.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <string>

namespace ganq {
namespace {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TEST(AgentNameTest, RoundTrip) {
  for (AgentKind k : {AgentKind::kQ, AgentKind::kDq, AgentKind::kDqn, AgentKind::kGanDqn}) {
    EXPECT_EQ(parse_agent_name(agent_name(k)), k);
  }
  EXPECT_EQ(agent_name(AgentKind::kGanDqn), "gan-dqn");
  EXPECT_THROW(parse_agent_name("ppo"), std::invalid_argument);
  EXPECT_TRUE(is_tabular_agent(AgentKind::kDq));
  EXPECT_FALSE(is_tabular_agent(AgentKind::kDqn));
}

TEST(RunConfigTest, DefaultsFollowPresets) {
  const RunConfig grid = RunConfig::defaults(EnvKind::kGridworld, AgentKind::kQ);
  EXPECT_EQ(grid.max_steps, 100);
  EXPECT_DOUBLE_EQ(grid.gamma, 0.9);
  const RunConfig cart = RunConfig::defaults(EnvKind::kCartPole, AgentKind::kDqn);
  EXPECT_EQ(cart.max_steps, 200);
  EXPECT_EQ(cart.hidden_units, 128);
  EXPECT_EQ(cart.noise_dim, 16);
  EXPECT_NO_THROW(grid.validate());
  EXPECT_NO_THROW(cart.validate());
}

TEST(RunConfigTest, ParseAppliesSectionsForTheSelectedEnvOnly) {
  const RunConfig c = parse_run_config(R"(# comment
env = cartpole
agent = dqn
seeds = 0..3
episodes = 40   # trailing comment
[two-state]
hidden_units = 5
[cartpole]
hidden_units = 32
lambda = 0.5
)");
  EXPECT_EQ(c.env, EnvKind::kCartPole);
  EXPECT_EQ(c.agent, AgentKind::kDqn);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ(c.episodes, 40);
  EXPECT_EQ(c.hidden_units, 32);
  EXPECT_DOUBLE_EQ(c.lambda, 0.5);
  EXPECT_EQ(c.max_steps, 200);  // preset, not overridden
}

TEST(RunConfigTest, SectionOverridesGlobalRegardlessOfOrder) {
  const RunConfig c = parse_run_config("[gridworld]\nalpha = 0.3\n");
  EXPECT_DOUBLE_EQ(c.alpha, 0.1);  // env defaults to two-state
  const RunConfig d = parse_run_config("env = gridworld\n[gridworld]\nalpha = 0.3\n");
  EXPECT_DOUBLE_EQ(d.alpha, 0.3);
}

TEST(RunConfigTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_run_config("bogus_key = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("episodes = 1\nepisodes = 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("[moon]\nepisodes = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("[cartpole]\nenv = acrobot\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("episodes 10\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("episodes = ten\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("episodes = 0\n").validate(), std::invalid_argument);
  EXPECT_THROW(parse_run_config("seeds =\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("env = q\n"), std::invalid_argument);
  EXPECT_THROW(parse_run_config("env = cartpole\nagent = q\n").validate(), std::invalid_argument);
  try {
    parse_run_config("episodes = 5\n\nnot_a_key = 1\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(RunConfigTest, RoundTripIsIdentity) {
  RunConfig c = RunConfig::defaults(EnvKind::kAcrobot, AgentKind::kGanDqn);
  c.seeds = {3, 1, 4, 1, 5};
  c.lambda = 0.1 + 0.2;  // not exactly representable in short decimal
  c.alpha0 = 1.0 / 3.0;
  c.value_scale = 1e-7;
  c.output_dir = "out dir";
  c.plot = true;
  c.use_target_network = false;
  const std::string text = serialize_run_config(c);
  const RunConfig back = parse_run_config(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(serialize_run_config(back), text);
  for (EnvKind env : {EnvKind::kTwoState, EnvKind::kTwoGoalChain, EnvKind::kGridworld}) {
    for (AgentKind agent : {AgentKind::kQ, AgentKind::kDq, AgentKind::kGanDqn}) {
      const RunConfig d = RunConfig::defaults(env, agent);
      EXPECT_EQ(parse_run_config(serialize_run_config(d)), d);
    }
  }
}

TEST(RunConfigTest, SetFieldAndHash) {
  RunConfig c;
  set_config_field(c, "episodes", "12");
  EXPECT_EQ(c.episodes, 12);
  set_config_field(c, "use_target_network", "false");
  EXPECT_FALSE(c.use_target_network);
  EXPECT_THROW(set_config_field(c, "nope", "1"), std::invalid_argument);
  const std::string h = config_hash(c);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, fnv1a_hex(serialize_run_config(c)));
  RunConfig other = c;
  other.episodes = 13;
  EXPECT_NE(config_hash(other), h);
}

TEST(RunConfigTest, ConvertsToAgentConfigs) {
  RunConfig c = RunConfig::defaults(EnvKind::kTwoState, AgentKind::kGanDqn);
  c.lambda = 0.25;
  const GanQConfig g = c.deep_config(7);
  EXPECT_EQ(g.seed, 7u);
  EXPECT_DOUBLE_EQ(g.lambda, 0.25);
  EXPECT_DOUBLE_EQ(g.gamma, 0.95);
  const TabularAgentConfig t = c.tabular_config(2);
  EXPECT_EQ(t.seed, 2u);
  EXPECT_EQ(t.epsilon.decay_steps, c.epsilon_decay_steps);
}

}  // namespace
}  // namespace ganq
