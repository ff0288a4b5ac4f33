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

#ifndef GANQ_TRAIN_LOG_HPP_
#define GANQ_TRAIN_LOG_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ganq {

struct EpisodeRecord {
  std::int64_t seed = 0;
  int episode = 0;  // 1-based
  double reward = 0.0;  // undiscounted cumulative reward
  int steps = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  std::optional<double> w1_diag;  // max over (s, a) of the per-cell diagnostic
  bool truncated = false;
};

// W_1 between generator samples and Monte-Carlo returns for one (s, a).
struct DiagnosticRecord {
  std::int64_t seed = 0;
  int episode = 0;
  int state = 0;
  int action = 0;
  double w1 = 0.0;
};

struct TrainLog {
  std::vector<EpisodeRecord> episodes;
  std::vector<DiagnosticRecord> diagnostics;
  bool diverged = false;
  std::string divergence_message;
  double wall_seconds = 0.0;
  std::string config_hash;

  double mean_reward() const;
  // Mean reward of the last `window` episodes (all if fewer).
  double trailing_mean(std::size_t window) const;
  // Best trailing-window mean seen at any point of the run.
  double best_trailing_mean(std::size_t window) const;
};

// Called after every episode; returning false stops training early.
using EpisodeCallback = std::function<bool(const EpisodeRecord&)>;

// Exact header: seed,episode,reward,steps,epsilon,alpha,w1_diag
inline constexpr const char* kEpisodeCsvHeader = "seed,episode,reward,steps,epsilon,alpha,w1_diag";
inline constexpr const char* kDiagnosticCsvHeader = "seed,episode,state,action,w1";

// Numbers are printed with "%.12g"; an absent diagnostic is an empty field.
std::string format_number(double value);
void write_episode_csv(std::ostream& out, const std::vector<const TrainLog*>& logs);
void write_diagnostic_csv(std::ostream& out, const std::vector<const TrainLog*>& logs);

}  // namespace ganq

#endif  // GANQ_TRAIN_LOG_HPP_
