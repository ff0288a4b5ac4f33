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

#include "ganq/train_log.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace ganq {

double TrainLog::mean_reward() const {
  if (episodes.empty()) return 0.0;
  double total = 0.0;
  for (const auto& e : episodes) total += e.reward;
  return total / static_cast<double>(episodes.size());
}

double TrainLog::trailing_mean(std::size_t window) const {
  if (episodes.empty() || window == 0) return 0.0;
  const std::size_t n = std::min(window, episodes.size());
  double total = 0.0;
  for (std::size_t i = episodes.size() - n; i < episodes.size(); ++i) total += episodes[i].reward;
  return total / static_cast<double>(n);
}

double TrainLog::best_trailing_mean(std::size_t window) const {
  if (episodes.size() < window || window == 0) return trailing_mean(window);
  double running = 0.0;
  for (std::size_t i = 0; i < window; ++i) running += episodes[i].reward;
  double best = running;
  for (std::size_t i = window; i < episodes.size(); ++i) {
    running += episodes[i].reward - episodes[i - window].reward;
    best = std::max(best, running);
  }
  return best / static_cast<double>(window);
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void write_episode_csv(std::ostream& out, const std::vector<const TrainLog*>& logs) {
  out << kEpisodeCsvHeader << '\n';
  for (const TrainLog* log : logs) {
    for (const auto& e : log->episodes) {
      out << e.seed << ',' << e.episode << ',' << format_number(e.reward) << ',' << e.steps << ','
          << format_number(e.epsilon) << ',' << format_number(e.alpha) << ',';
      if (e.w1_diag) out << format_number(*e.w1_diag);
      out << '\n';
    }
  }
}

void write_diagnostic_csv(std::ostream& out, const std::vector<const TrainLog*>& logs) {
  out << kDiagnosticCsvHeader << '\n';
  for (const TrainLog* log : logs) {
    for (const auto& d : log->diagnostics) {
      out << d.seed << ',' << d.episode << ',' << d.state << ',' << d.action << ','
          << format_number(d.w1) << '\n';
    }
  }
}

}  // namespace ganq
