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

#ifndef GANQ_HARNESS_HPP_
#define GANQ_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ganq/neural.hpp"
#include "ganq/run_config.hpp"
#include "ganq/train_log.hpp"

namespace ganq {

// ---------------------------------------------------------------------------
// Seed sweeps

struct SeedRun {
  std::uint64_t seed = 0;
  TrainLog log;
  // Final networks of deep agents, e.g. {"generator", G}.
  std::vector<std::pair<std::string, DenseNet>> networks;
};

struct RunOptions {
  bool write_outputs = true;
  unsigned workers = 0;  // 0: one per hardware thread, capped by the seed count
  // Optional per-seed early-stop hook, called from worker threads.
  std::function<EpisodeCallback(std::uint64_t seed)> callback_for_seed;
};

struct RunResult {
  RunConfig config;
  std::vector<SeedRun> runs;  // in the order of config.seeds
  std::vector<std::string> written_files;

  int diverged_seeds() const;
  std::vector<const TrainLog*> logs() const;
};

// Trains one seed of `config` on the calling thread.
SeedRun run_seed(const RunConfig& config, std::uint64_t seed, const EpisodeCallback& on_episode = {});

// Validates the config, checks the output directory, trains every seed on a
// worker pool and then writes (with write_outputs):
//   <env>_<agent>_seed<k>.csv   episode rows of one seed
//   <env>_<agent>_summary.csv   mean and sample std across seeds per episode
//   <env>_<agent>_w1.csv        per-(s,a) diagnostics, when any were logged
//   <env>_<agent>_config.txt    the resolved config
//   <env>_<agent>_meta.json     config hash, wall-clock and divergence flags
//   <env>_<agent>.svg           with config.plot
//   <env>_<agent>_seed<k>_<net>.ganqnet   with config.save_checkpoints
RunResult run_experiment(const RunConfig& config, const RunOptions& options = {});

// Runs `tasks` on up to `workers` threads; rethrows the first exception
// after all workers have joined.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task);

struct SummaryRow {
  int episode = 0;
  int n = 0;  // seeds that reached this episode
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 when n < 2
};

inline constexpr const char* kSummaryCsvHeader = "episode,n,reward_mean,reward_std";

std::vector<SummaryRow> summarize_episodes(const std::vector<const TrainLog*>& logs);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// ---------------------------------------------------------------------------
// Table of mean rewards per episode: rows are agents, columns environments.

struct Table1Options {
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int episodes = 300;
  unsigned workers = 0;
  std::string output_dir;  // empty: nothing written
  // Optional source of already finished runs, e.g. the diagnostic runs of
  // the W_1 figure; a non-null result is used instead of training that seed.
  // Diagnostics draw from their own stream, so such runs match the ones
  // trained here episode for episode.
  std::function<const SeedRun*(AgentKind, EnvKind, std::uint64_t seed)> precomputed;
};

struct Table1Cell {
  AgentKind agent = AgentKind::kQ;
  EnvKind env = EnvKind::kTwoState;
  std::vector<double> seed_means;  // mean reward per episode of each seed
  double mean = 0.0;
  double std = 0.0;
  int diverged = 0;
};

struct Table1 {
  std::vector<Table1Cell> cells;

  const Table1Cell& at(AgentKind agent, EnvKind env) const;
};

inline constexpr AgentKind kTable1Agents[] = {AgentKind::kQ, AgentKind::kDq, AgentKind::kGanDqn};
inline constexpr EnvKind kTable1Envs[] = {EnvKind::kTwoState, EnvKind::kTwoGoalChain,
                                          EnvKind::kGridworld};

Table1 reproduce_table1(const Table1Options& options);
std::string format_table1(const Table1& table);
void write_table1_csv(std::ostream& out, const Table1& table);

// ---------------------------------------------------------------------------
// W_1 diagnostic series of GAN-DQN on TwoState.

struct Fig1Options {
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int episodes = 300;
  int first_episode = 10;
  unsigned workers = 0;
  std::string output_dir;
};

struct Fig1Cell {
  std::uint64_t seed = 0;
  int state = 0;
  int action = 0;
  double w1_first = 0.0;
  double w1_last = 0.0;
  bool halved() const { return w1_last < 0.5 * w1_first; }
};

struct Fig1Result {
  std::vector<SeedRun> runs;
  std::vector<Fig1Cell> cells;
  int first_episode = 0;
  int last_episode = 0;

  // Seeds whose every (s,a) cell halved its W_1.
  int seeds_halved() const;
};

Fig1Result reproduce_fig1(const Fig1Options& options);
std::string format_fig1(const Fig1Result& result);

// ---------------------------------------------------------------------------
// Reports

// V*, Q* and the greedy policy of a tabular environment; throws
// std::invalid_argument for control environments.
std::string solve_report(EnvKind env);

// Undiscounted return of one greedy episode under the optimal policy.
double optimal_episode_return(EnvKind env);

// Throws std::invalid_argument unless 0 < epsilon < 0.5.
std::string bandit_report(double epsilon);

struct GradCheckSummary {
  int networks = 0;
  int failures = 0;
  double max_param_error = 0.0;
  double max_input_error = 0.0;
  double max_penalty_error = 0.0;
  double first_order_tolerance = 1e-6;
  double second_order_tolerance = 1e-4;

  bool ok() const { return failures == 0; }
};

// Random scalar-output nets of assorted shapes plus the 64- and 128-unit
// discriminator presets, checked against central differences.
GradCheckSummary run_gradchecks(int n_networks, std::uint64_t seed,
                                double first_order_tolerance = 1e-6,
                                double second_order_tolerance = 1e-4);
std::string format_gradchecks(const GradCheckSummary& summary);

}  // namespace ganq

#endif  // GANQ_HARNESS_HPP_
