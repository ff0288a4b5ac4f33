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

// Command-line front end: train, solve, bandit-demo, table1, fig1, gradcheck.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ganq/harness.hpp"
#include "ganq/run_config.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitCheckFailed = 3;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  ganq::RunConfig scratch;
  ganq::set_config_field(scratch, "seeds", text);
  return scratch.seeds;
}

int report_divergence(int diverged, int total, bool allow) {
  if (diverged == 0) return 0;
  std::fprintf(stderr, "%s: %d of %d seed runs diverged (non-finite loss)\n",
               allow ? "warning" : "error", diverged, total);
  return allow ? 0 : kExitDiverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributional RL lab: tabular and GAN-based Q-learning"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train one agent on one environment over a seed list");
  std::string config_path;
  std::string env_text;
  std::string agent_text;
  std::string seeds_text;
  std::string out_dir;
  int episodes = 0;
  std::vector<std::string> sets;
  unsigned workers = 0;
  bool allow_divergence = false;
  bool plot = false;
  bool print_config = false;
  train->add_option("-c,--config", config_path, "config file (key = value lines)");
  train->add_option("--env", env_text, "two-state, 2g-chain, gridworld, cartpole or acrobot");
  train->add_option("--agent", agent_text, "q, dq, dqn or gan-dqn");
  train->add_option("--seeds", seeds_text, "seed list, e.g. 0,1,2 or 0..9");
  train->add_option("--episodes", episodes, "episodes per seed");
  train->add_option("-o,--out", out_dir, "output directory");
  train->add_option("--set", sets, "override a config field, key=value (repeatable)");
  train->add_option("-j,--workers", workers, "worker threads (0: hardware concurrency)");
  train->add_flag("--plot", plot, "also write an SVG reward plot");
  train->add_flag("--print-config", print_config, "print the resolved config and exit");
  train->add_flag("--allow-divergence", allow_divergence, "exit 0 even if a seed diverged");

  // solve
  auto* solve = app.add_subcommand("solve", "print V*, Q* and the optimal policy of a tabular env");
  std::string solve_env;
  solve->add_option("env", solve_env, "two-state, 2g-chain or gridworld")->required();

  // bandit-demo
  auto* bandit = app.add_subcommand("bandit-demo", "Dirac generator vs quadratic critic on two arms");
  double bandit_epsilon = 0.01;
  bandit->add_option("-e,--epsilon", bandit_epsilon, "arm A pays 1/2 + epsilon; must lie in (0, 0.5)");

  // table1
  auto* table1 = app.add_subcommand("table1", "mean reward per episode of q, dq, gan-dqn on the tabular envs");
  std::string table_seeds = "0..9";
  int table_episodes = 300;
  std::string table_out;
  unsigned table_workers = 0;
  bool table_allow = false;
  table1->add_option("--seeds", table_seeds, "seed list");
  table1->add_option("--episodes", table_episodes, "episodes per seed");
  table1->add_option("-o,--out", table_out, "output directory for table1.csv and per-run CSVs");
  table1->add_option("-j,--workers", table_workers, "worker threads");
  table1->add_flag("--allow-divergence", table_allow, "exit 0 even if a seed diverged");

  // fig1
  auto* fig1 = app.add_subcommand("fig1", "W1 diagnostic series of gan-dqn on two-state");
  std::string fig_seeds = "0..9";
  int fig_episodes = 300;
  std::string fig_out = "fig1";
  unsigned fig_workers = 0;
  bool fig_allow = false;
  fig1->add_option("--seeds", fig_seeds, "seed list");
  fig1->add_option("--episodes", fig_episodes, "episodes per seed");
  fig1->add_option("-o,--out", fig_out, "output directory");
  fig1->add_option("-j,--workers", fig_workers, "worker threads");
  fig1->add_flag("--allow-divergence", fig_allow, "exit 0 even if a seed diverged");

  // gradcheck
  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference check of all gradient paths");
  int grad_networks = 100;
  std::uint64_t grad_seed = 0;
  gradcheck->add_option("-n,--networks", grad_networks, "number of random networks");
  gradcheck->add_option("--seed", grad_seed, "seed for weights and inputs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      ganq::RunConfig config;
      if (!config_path.empty()) {
        if (!env_text.empty() || !agent_text.empty()) {
          throw std::invalid_argument("--env/--agent cannot be combined with --config; edit the file");
        }
        config = ganq::load_run_config(config_path);
      } else {
        const auto env = env_text.empty() ? ganq::EnvKind::kTwoState : ganq::parse_env_name(env_text);
        const auto agent =
            agent_text.empty() ? ganq::AgentKind::kGanDqn : ganq::parse_agent_name(agent_text);
        config = ganq::RunConfig::defaults(env, agent);
      }
      if (!seeds_text.empty()) ganq::set_config_field(config, "seeds", seeds_text);
      if (episodes > 0) config.episodes = episodes;
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (plot) config.plot = true;
      for (const std::string& item : sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got " + item);
        const std::string key = item.substr(0, eq);
        if (key == "env" || key == "agent") {
          throw std::invalid_argument("use --env/--agent to choose the environment and agent");
        }
        ganq::set_config_field(config, key, item.substr(eq + 1));
      }
      config.validate();
      if (print_config) {
        std::cout << ganq::serialize_run_config(config);
        return 0;
      }
      ganq::RunOptions options;
      options.workers = workers;
      const ganq::RunResult result = ganq::run_experiment(config, options);
      for (const ganq::SeedRun& run : result.runs) {
        std::printf("seed %llu: %zu episodes, mean reward %.6g, trailing-100 mean %.6g%s\n",
                    static_cast<unsigned long long>(run.seed), run.log.episodes.size(),
                    run.log.mean_reward(), run.log.trailing_mean(100),
                    run.log.diverged ? " (diverged)" : "");
      }
      std::printf("wrote %zu files to %s\n", result.written_files.size(), config.output_dir.c_str());
      return report_divergence(result.diverged_seeds(), static_cast<int>(result.runs.size()),
                               allow_divergence);
    }
    if (*solve) {
      std::cout << ganq::solve_report(ganq::parse_env_name(solve_env));
      return 0;
    }
    if (*bandit) {
      std::cout << ganq::bandit_report(bandit_epsilon);
      return 0;
    }
    if (*table1) {
      ganq::Table1Options options;
      options.seeds = parse_seed_list(table_seeds);
      options.episodes = table_episodes;
      options.output_dir = table_out;
      options.workers = table_workers;
      const ganq::Table1 table = ganq::reproduce_table1(options);
      std::cout << ganq::format_table1(table);
      int diverged = 0;
      for (const auto& cell : table.cells) diverged += cell.diverged;
      return report_divergence(diverged,
                               static_cast<int>(table.cells.size() * options.seeds.size()),
                               table_allow);
    }
    if (*fig1) {
      ganq::Fig1Options options;
      options.seeds = parse_seed_list(fig_seeds);
      options.episodes = fig_episodes;
      options.output_dir = fig_out;
      options.workers = fig_workers;
      const ganq::Fig1Result result = ganq::reproduce_fig1(options);
      std::cout << ganq::format_fig1(result);
      int diverged = 0;
      for (const auto& run : result.runs) diverged += run.log.diverged ? 1 : 0;
      return report_divergence(diverged, static_cast<int>(result.runs.size()), fig_allow);
    }
    if (*gradcheck) {
      const ganq::GradCheckSummary summary = ganq::run_gradchecks(grad_networks, grad_seed);
      std::cout << ganq::format_gradchecks(summary);
      return summary.ok() ? 0 : kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return 0;
}
