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

#include "ganq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ganq/deep_agents.hpp"
#include "ganq/environments.hpp"
#include "ganq/exact_solvers.hpp"
#include "ganq/svg_plot.hpp"
#include "ganq/tabular_agents.hpp"
#include "json.hpp"

namespace ganq {
namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void ensure_writable_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir);
  }
  const fs::path probe = fs::path(dir) / ".ganq_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory is not writable: " + dir);
  }
  fs::remove(probe, ec);
}

std::ofstream open_output(const fs::path& path, std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  written.push_back(path.string());
  return out;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<std::string> action_names(EnvKind env) {
  switch (env) {
    case EnvKind::kTwoState:
      return {"stay", "switch"};
    case EnvKind::kTwoGoalChain:
      return {"left", "right"};
    case EnvKind::kGridworld:
      return {"up", "down", "left", "right"};
    default:
      return {};
  }
}

std::string prefix_of(const RunConfig& config) {
  return std::string(env_name(config.env)) + "_" + std::string(agent_name(config.agent));
}

}  // namespace

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
  if (n == 0) return;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Seed sweeps

int RunResult::diverged_seeds() const {
  int count = 0;
  for (const SeedRun& run : runs) count += run.log.diverged ? 1 : 0;
  return count;
}

std::vector<const TrainLog*> RunResult::logs() const {
  std::vector<const TrainLog*> out;
  for (const SeedRun& run : runs) out.push_back(&run.log);
  return out;
}

SeedRun run_seed(const RunConfig& config, std::uint64_t seed, const EpisodeCallback& on_episode) {
  SeedRun result;
  result.seed = seed;
  const EnvSpec spec = config.env_spec();
  switch (config.agent) {
    case AgentKind::kQ:
    case AgentKind::kDq: {
      TabularRun run = run_tabular(spec, config.tabular_config(seed),
                                   config.agent == AgentKind::kQ ? TabularKind::kQ : TabularKind::kDq,
                                   on_episode);
      result.log = std::move(run.log);
      break;
    }
    case AgentKind::kDqn: {
      DqnRun run = train_dqn(spec, config.deep_config(seed), on_episode);
      result.log = std::move(run.log);
      result.networks.emplace_back("network", run.agent.network());
      result.networks.emplace_back("target_network", run.agent.target_network());
      break;
    }
    case AgentKind::kGanDqn: {
      GanQRun run = train_gan_q(spec, config.deep_config(seed), on_episode);
      result.log = std::move(run.log);
      result.networks.emplace_back("generator", run.agent.generator());
      result.networks.emplace_back("discriminator", run.agent.discriminator());
      result.networks.emplace_back("target_generator", run.agent.target_generator());
      break;
    }
  }
  result.log.config_hash = config_hash(config);
  return result;
}

std::vector<SummaryRow> summarize_episodes(const std::vector<const TrainLog*>& logs) {
  std::map<int, std::vector<double>> by_episode;
  for (const TrainLog* log : logs) {
    for (const EpisodeRecord& r : log->episodes) by_episode[r.episode].push_back(r.reward);
  }
  std::vector<SummaryRow> rows;
  for (const auto& [episode, rewards] : by_episode) {
    rows.push_back(SummaryRow{episode, static_cast<int>(rewards.size()), mean_of(rewards),
                              sample_std(rewards)});
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryCsvHeader << '\n';
  for (const SummaryRow& row : rows) {
    out << row.episode << ',' << row.n << ',' << format_number(row.mean) << ','
        << format_number(row.std) << '\n';
  }
}

namespace {

PlotSeries summary_series(const std::string& label, const std::vector<SummaryRow>& rows) {
  PlotSeries series;
  series.label = label;
  for (const SummaryRow& row : rows) {
    series.x.push_back(row.episode);
    series.y.push_back(row.mean);
    series.lower.push_back(row.mean - row.std);
    series.upper.push_back(row.mean + row.std);
  }
  return series;
}

void write_run_outputs(RunResult& result) {
  const RunConfig& config = result.config;
  const fs::path dir(config.output_dir);
  const std::string prefix = prefix_of(config);
  auto& written = result.written_files;

  for (const SeedRun& run : result.runs) {
    auto out = open_output(dir / (prefix + "_seed" + std::to_string(run.seed) + ".csv"), written);
    write_episode_csv(out, {&run.log});
  }
  const auto logs = result.logs();
  const auto rows = summarize_episodes(logs);
  {
    auto out = open_output(dir / (prefix + "_summary.csv"), written);
    write_summary_csv(out, rows);
  }
  const bool any_diagnostics = std::any_of(result.runs.begin(), result.runs.end(),
                                           [](const SeedRun& r) { return !r.log.diagnostics.empty(); });
  if (any_diagnostics) {
    auto out = open_output(dir / (prefix + "_w1.csv"), written);
    write_diagnostic_csv(out, logs);
  }
  {
    auto out = open_output(dir / (prefix + "_config.txt"), written);
    out << serialize_run_config(config);
  }
  {
    nlohmann::json meta;
    meta["env"] = std::string(env_name(config.env));
    meta["agent"] = std::string(agent_name(config.agent));
    meta["config_hash"] = config_hash(config);
    meta["runs"] = nlohmann::json::array();
    for (const SeedRun& run : result.runs) {
      meta["runs"].push_back({{"seed", run.seed},
                              {"episodes", run.log.episodes.size()},
                              {"mean_reward", run.log.mean_reward()},
                              {"wall_seconds", run.log.wall_seconds},
                              {"diverged", run.log.diverged},
                              {"divergence_message", run.log.divergence_message}});
    }
    auto out = open_output(dir / (prefix + "_meta.json"), written);
    out << meta.dump(2) << '\n';
  }
  if (config.plot) {
    PlotOptions options;
    options.title = std::string(env_name(config.env)) + ": reward per episode (mean +/- std over " +
                    std::to_string(result.runs.size()) + " seeds)";
    auto out = open_output(dir / (prefix + ".svg"), written);
    out << line_plot_svg({summary_series(std::string(agent_name(config.agent)), rows)}, options);
  }
  if (config.save_checkpoints) {
    for (const SeedRun& run : result.runs) {
      for (const auto& [name, net] : run.networks) {
        const fs::path path = dir / (prefix + "_seed" + std::to_string(run.seed) + "_" + name + ".ganqnet");
        net.save_file(path.string());
        written.push_back(path.string());
      }
    }
  }
}

}  // namespace

RunResult run_experiment(const RunConfig& config, const RunOptions& options) {
  config.validate();
  if (options.write_outputs) ensure_writable_dir(config.output_dir);

  RunResult result;
  result.config = config;
  result.runs.resize(config.seeds.size());
  parallel_for(config.seeds.size(), options.workers, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    EpisodeCallback callback;
    if (options.callback_for_seed) callback = options.callback_for_seed(seed);
    result.runs[i] = run_seed(config, seed, callback);
  });
  if (options.write_outputs) write_run_outputs(result);
  return result;
}

// ---------------------------------------------------------------------------
// Mean-reward table

const Table1Cell& Table1::at(AgentKind agent, EnvKind env) const {
  for (const Table1Cell& cell : cells) {
    if (cell.agent == agent && cell.env == env) return cell;
  }
  throw std::out_of_range("no table cell for " + std::string(agent_name(agent)) + " on " +
                          std::string(env_name(env)));
}

Table1 reproduce_table1(const Table1Options& options) {
  if (options.seeds.empty()) throw std::invalid_argument("table1: seeds must not be empty");
  if (options.episodes < 1) throw std::invalid_argument("table1: episodes must be >= 1");
  if (!options.output_dir.empty()) ensure_writable_dir(options.output_dir);

  std::vector<RunConfig> configs;
  for (AgentKind agent : kTable1Agents) {
    for (EnvKind env : kTable1Envs) {
      RunConfig config = RunConfig::defaults(env, agent);
      config.seeds = options.seeds;
      config.episodes = options.episodes;
      config.diag_every = 0;
      config.validate();
      configs.push_back(config);
    }
  }
  const std::size_t n_seeds = options.seeds.size();
  std::vector<SeedRun> runs(configs.size() * n_seeds);
  // Longest jobs first keeps the pool busy to the end.
  std::vector<std::size_t> order(runs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
    return configs[i / n_seeds].agent == AgentKind::kGanDqn;
  });
  std::vector<std::size_t> pending;
  for (std::size_t i : order) {
    const RunConfig& config = configs[i / n_seeds];
    const std::uint64_t seed = options.seeds[i % n_seeds];
    const SeedRun* done =
        options.precomputed ? options.precomputed(config.agent, config.env, seed) : nullptr;
    if (done != nullptr) {
      runs[i] = *done;
    } else {
      pending.push_back(i);
    }
  }
  parallel_for(pending.size(), options.workers, [&](std::size_t k) {
    const std::size_t i = pending[k];
    runs[i] = run_seed(configs[i / n_seeds], options.seeds[i % n_seeds]);
  });

  Table1 table;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    Table1Cell cell;
    cell.agent = configs[c].agent;
    cell.env = configs[c].env;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const TrainLog& log = runs[c * n_seeds + s].log;
      cell.seed_means.push_back(log.mean_reward());
      cell.diverged += log.diverged ? 1 : 0;
    }
    cell.mean = mean_of(cell.seed_means);
    cell.std = sample_std(cell.seed_means);
    table.cells.push_back(cell);
  }

  if (!options.output_dir.empty()) {
    std::vector<std::string> written;
    const fs::path dir(options.output_dir);
    {
      auto out = open_output(dir / "table1.csv", written);
      write_table1_csv(out, table);
    }
    {
      auto out = open_output(dir / "table1.txt", written);
      out << format_table1(table);
    }
    for (std::size_t c = 0; c < configs.size(); ++c) {
      std::vector<const TrainLog*> logs;
      for (std::size_t s = 0; s < n_seeds; ++s) logs.push_back(&runs[c * n_seeds + s].log);
      auto out = open_output(dir / ("table1_" + prefix_of(configs[c]) + ".csv"), written);
      write_episode_csv(out, logs);
    }
  }
  return table;
}

std::string format_table1(const Table1& table) {
  std::ostringstream out;
  const auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
  };
  out << "Mean reward per episode (mean +/- std over seeds)\n";
  out << pad("", 12);
  for (EnvKind env : kTable1Envs) out << pad(std::string(env_name(env)), 22);
  out << '\n';
  for (AgentKind agent : kTable1Agents) {
    out << std::string(agent_name(agent)) << std::string(12 - agent_name(agent).size(), ' ');
    for (EnvKind env : kTable1Envs) {
      const Table1Cell& cell = table.at(agent, env);
      std::string text = fixed(cell.mean, 3) + " +/- " + fixed(cell.std, 3);
      if (cell.diverged > 0) text += " (" + std::to_string(cell.diverged) + " div)";
      out << pad(text, 22);
    }
    out << '\n';
  }
  return out.str();
}

void write_table1_csv(std::ostream& out, const Table1& table) {
  out << "agent,env,mean,std,seeds,diverged\n";
  for (const Table1Cell& cell : table.cells) {
    out << agent_name(cell.agent) << ',' << env_name(cell.env) << ',' << format_number(cell.mean)
        << ',' << format_number(cell.std) << ',' << cell.seed_means.size() << ',' << cell.diverged
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// W_1 diagnostic series

int Fig1Result::seeds_halved() const {
  std::map<std::uint64_t, bool> ok;
  for (const SeedRun& run : runs) ok[run.seed] = true;
  for (const Fig1Cell& cell : cells) {
    if (!cell.halved()) ok[cell.seed] = false;
  }
  int count = 0;
  for (const auto& [seed, halved] : ok) {
    // A seed without any cell (diverged before the first diagnostic) fails.
    const bool has_cells = std::any_of(cells.begin(), cells.end(),
                                       [s = seed](const Fig1Cell& c) { return c.seed == s; });
    count += (halved && has_cells) ? 1 : 0;
  }
  return count;
}

Fig1Result reproduce_fig1(const Fig1Options& options) {
  RunConfig config = RunConfig::defaults(EnvKind::kTwoState, AgentKind::kGanDqn);
  config.seeds = options.seeds;
  config.episodes = options.episodes;
  config.validate();
  if (options.first_episode < 1 || options.first_episode % config.diag_every != 0 ||
      options.first_episode > options.episodes) {
    throw std::invalid_argument("fig1: first_episode must be a diagnostic episode within the run");
  }
  if (!options.output_dir.empty()) {
    config.output_dir = options.output_dir;
    ensure_writable_dir(config.output_dir);
  }

  Fig1Result result;
  result.first_episode = options.first_episode;
  result.last_episode = options.episodes - options.episodes % config.diag_every;
  result.runs.resize(config.seeds.size());
  parallel_for(config.seeds.size(), options.workers, [&](std::size_t i) {
    result.runs[i] = run_seed(config, config.seeds[i]);
  });

  for (const SeedRun& run : result.runs) {
    std::map<std::pair<int, int>, Fig1Cell> cells;
    for (const DiagnosticRecord& d : run.log.diagnostics) {
      if (d.episode != result.first_episode && d.episode != result.last_episode) continue;
      Fig1Cell& cell = cells[{d.state, d.action}];
      cell.seed = run.seed;
      cell.state = d.state;
      cell.action = d.action;
      if (d.episode == result.first_episode) cell.w1_first = d.w1;
      if (d.episode == result.last_episode) cell.w1_last = d.w1;
    }
    if (run.log.diverged) continue;
    for (const auto& [key, cell] : cells) result.cells.push_back(cell);
  }

  if (!options.output_dir.empty()) {
    std::vector<std::string> written;
    const fs::path dir(options.output_dir);
    {
      auto out = open_output(dir / "fig1_w1.csv", written);
      std::vector<const TrainLog*> logs;
      for (const SeedRun& run : result.runs) logs.push_back(&run.log);
      write_diagnostic_csv(out, logs);
    }
    {
      auto out = open_output(dir / "fig1.txt", written);
      out << format_fig1(result);
    }
    // Mean W_1 across seeds per (s, a) and episode.
    std::map<std::pair<int, int>, std::map<int, std::vector<double>>> series;
    for (const SeedRun& run : result.runs) {
      for (const DiagnosticRecord& d : run.log.diagnostics) {
        series[{d.state, d.action}][d.episode].push_back(d.w1);
      }
    }
    const auto names = action_names(EnvKind::kTwoState);
    std::vector<PlotSeries> plot;
    for (const auto& [key, by_episode] : series) {
      PlotSeries s;
      s.label = "s" + std::to_string(key.first) + ", " + names[static_cast<std::size_t>(key.second)];
      for (const auto& [episode, values] : by_episode) {
        s.x.push_back(episode);
        s.y.push_back(mean_of(values));
      }
      plot.push_back(std::move(s));
    }
    PlotOptions plot_options;
    plot_options.title = "two-state gan-dqn: W1(generator, Monte-Carlo returns)";
    plot_options.y_label = "W1";
    auto out = open_output(dir / "fig1.svg", written);
    out << line_plot_svg(plot, plot_options);
  }
  return result;
}

std::string format_fig1(const Fig1Result& result) {
  std::ostringstream out;
  const auto names = action_names(EnvKind::kTwoState);
  out << "W1 between generator samples and Monte-Carlo returns, episode " << result.first_episode
      << " -> " << result.last_episode << "\n";
  for (const Fig1Cell& cell : result.cells) {
    out << "seed " << cell.seed << "  (s" << cell.state << ", "
        << names[static_cast<std::size_t>(cell.action)] << ")  " << fixed(cell.w1_first, 3)
        << " -> " << fixed(cell.w1_last, 3) << (cell.halved() ? "  halved" : "  not halved")
        << '\n';
  }
  out << "seeds with every cell halved: " << result.seeds_halved() << " / " << result.runs.size()
      << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Reports

std::string solve_report(EnvKind env) {
  if (!is_tabular_kind(env)) {
    throw std::invalid_argument("solve: " + std::string(env_name(env)) +
                                " is a control environment; exact solutions need a tabular one");
  }
  const EnvSpec spec = EnvSpec::preset(env);
  const auto environment = build_env(spec, 0);
  const TabularMdp mdp = environment->tabular_dynamics();
  const OptimalSolution solution = solve_optimal(mdp);
  const auto names = action_names(env);

  std::ostringstream out;
  out << "environment " << env_name(env) << ", gamma " << format_number(spec.gamma) << ", "
      << environment->n_states() << " states\n";
  out << "state  V*";
  for (const std::string& name : names) out << "  Q*(" << name << ")";
  out << "  greedy\n";
  for (int s = 0; s < environment->n_states(); ++s) {
    out << s << "  " << fixed(solution.values[static_cast<std::size_t>(s)], 6);
    for (int a = 0; a < mdp.n_actions; ++a) out << "  " << fixed(solution.q(s, a), 6);
    if (mdp.is_terminal(s)) {
      out << "  (terminal)\n";
    } else {
      out << "  " << names[static_cast<std::size_t>(solution.greedy_actions[static_cast<std::size_t>(s)])]
          << '\n';
    }
  }
  out << "greedy episode return from the start state: "
      << format_number(optimal_episode_return(env)) << '\n';
  return out.str();
}

double optimal_episode_return(EnvKind env) {
  if (!is_tabular_kind(env)) throw std::invalid_argument("optimal_episode_return: tabular only");
  const auto environment = build_env(EnvSpec::preset(env), 0);
  const OptimalSolution solution = solve_optimal(environment->tabular_dynamics());
  Observation obs = environment->reset();
  double total = 0.0;
  while (true) {
    const StepResult step =
        environment->step(solution.greedy_actions[static_cast<std::size_t>(*obs.state_id)]);
    total += step.reward;
    if (step.done()) break;
    obs = step.obs;
  }
  return total;
}

std::string bandit_report(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("bandit-demo: epsilon must lie in (0, 0.5), got " +
                                format_number(epsilon));
  }
  const BanditReport report = bandit_misordering_demo(epsilon);
  std::ostringstream out;
  out << "two-armed bandit, epsilon = " << format_number(epsilon) << "\n";
  out << "arm A: deterministic reward 1/2 + epsilon, true mean " << fixed(report.true_mean_a, 7)
      << "\n";
  out << "arm B: Bernoulli(1/2) reward, true mean " << fixed(report.true_mean_b, 7) << "\n";
  out << "Dirac equilibrium against a quadratic critic: arm A " << fixed(report.equilibrium_a, 7)
      << ", arm B " << fixed(report.equilibrium_b, 7) << " (1/sqrt(2) = "
      << fixed(1.0 / std::sqrt(2.0), 7) << ")\n";
  out << "truth prefers arm " << (report.truth_prefers_a ? "A" : "B")
      << ", equilibrium prefers arm " << (report.equilibrium_prefers_a ? "A" : "B") << "\n";
  out << "verdict: " << report.verdict << "\n";
  return out.str();
}

GradCheckSummary run_gradchecks(int n_networks, std::uint64_t seed, double first_order_tolerance,
                                double second_order_tolerance) {
  if (n_networks < 1) throw std::invalid_argument("gradcheck: need at least one network");
  GradCheckSummary summary;
  summary.first_order_tolerance = first_order_tolerance;
  summary.second_order_tolerance = second_order_tolerance;
  Rng rng(seed, streams::kInit);
  for (int i = 0; i < n_networks; ++i) {
    std::vector<int> sizes;
    switch (i % 5) {
      case 0:  // tabular discriminator preset: (x, 2 one-hot states, 2 actions)
        sizes = DenseNet::preset_sizes(5, 1, 64);
        break;
      case 1:  // control discriminator preset: (x, 4 features, 2 actions)
        sizes = DenseNet::preset_sizes(7, 1, 128);
        break;
      case 2:  // tabular generator preset
        sizes = DenseNet::preset_sizes(2 + 8, 2, 64);
        break;
      case 3:  // control generator preset
        sizes = DenseNet::preset_sizes(6 + 16, 3, 128);
        break;
      default: {
        const int depth = 1 + static_cast<int>(rng.uniform_int(3));
        sizes.push_back(1 + static_cast<int>(rng.uniform_int(6)));
        for (int l = 0; l < depth; ++l) sizes.push_back(1 + static_cast<int>(rng.uniform_int(12)));
        sizes.push_back(1);
      }
    }
    const DenseNet net = DenseNet::glorot(sizes, rng);
    const GradCheckReport report =
        gradient_check(net, first_order_tolerance, second_order_tolerance, rng);
    ++summary.networks;
    summary.failures += report.ok() ? 0 : 1;
    summary.max_param_error = std::max(summary.max_param_error, report.param_error);
    summary.max_input_error = std::max(summary.max_input_error, report.input_error);
    summary.max_penalty_error = std::max(summary.max_penalty_error, report.penalty_error);
  }
  return summary;
}

std::string format_gradchecks(const GradCheckSummary& summary) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "networks checked: %d\n"
                "max relative error, parameter gradient: %.3e (tolerance %.0e)\n"
                "max relative error, input derivative:   %.3e (tolerance %.0e)\n"
                "max relative error, penalty gradient:   %.3e (tolerance %.0e)\n"
                "failures: %d\n",
                summary.networks, summary.max_param_error, summary.first_order_tolerance,
                summary.max_input_error, summary.first_order_tolerance, summary.max_penalty_error,
                summary.second_order_tolerance, summary.failures);
  return buf;
}

}  // namespace ganq
