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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace ganq {

std::string_view agent_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::kQ:
      return "q";
    case AgentKind::kDq:
      return "dq";
    case AgentKind::kDqn:
      return "dqn";
    case AgentKind::kGanDqn:
      return "gan-dqn";
  }
  throw std::invalid_argument("unknown agent kind");
}

AgentKind parse_agent_name(std::string_view name) {
  for (AgentKind kind : {AgentKind::kQ, AgentKind::kDq, AgentKind::kDqn, AgentKind::kGanDqn}) {
    if (agent_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown agent '" + std::string(name) +
                              "' (expected q, dq, dqn or gan-dqn)");
}

bool is_tabular_agent(AgentKind kind) { return kind == AgentKind::kQ || kind == AgentKind::kDq; }

RunConfig RunConfig::defaults(EnvKind env, AgentKind agent) {
  RunConfig config;
  config.env = env;
  config.agent = agent;
  const EnvSpec spec = EnvSpec::preset(env);
  const GanQConfig deep = GanQConfig::preset(env);
  config.max_steps = spec.max_steps;
  config.gamma = spec.gamma;
  config.episodes = deep.episodes;
  config.epsilon_start = deep.epsilon_start;
  config.epsilon_end = deep.epsilon_end;
  config.epsilon_decay_fraction = deep.epsilon_decay_fraction;
  config.epsilon_decay_steps = deep.epsilon_decay_steps;
  config.noise_dim = deep.noise_dim;
  config.hidden_units = deep.hidden_units;
  config.batch_size = deep.batch_size;
  config.n_disc = deep.n_disc;
  config.n_gen = deep.n_gen;
  config.lambda = deep.lambda;
  config.alpha0 = deep.alpha0;
  config.lr_decay_k = deep.lr_decay_k;
  config.use_target_network = deep.use_target_network;
  config.target_sync_period = deep.target_sync_period;
  config.buffer_capacity = deep.buffer_capacity;
  config.learning_starts = deep.learning_starts;
  config.train_every = deep.train_every;
  config.value_scale = deep.value_scale;
  config.diag_every = deep.diag_every;
  config.diag_samples = deep.diag_samples;
  if (is_tabular_agent(agent)) {
    const TabularAgentConfig tab = TabularAgentConfig::preset(spec);
    config.episodes = tab.episodes;
    config.alpha = tab.alpha;
    config.n_atoms = tab.n_atoms;
    config.epsilon_start = tab.epsilon.start;
    config.epsilon_end = tab.epsilon.end;
    config.epsilon_decay_steps = tab.epsilon.decay_steps;
  }
  return config;
}

void RunConfig::validate() const {
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid run config: " + what);
  };
  require(!seeds.empty(), "seeds must not be empty");
  require(!output_dir.empty(), "output_dir must not be empty");
  require(episodes >= 1, "episodes must be >= 1");
  require(max_steps >= 1, "max_steps must be >= 1");
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0,1)");
  require(epsilon_start >= 0.0 && epsilon_start <= 1.0, "epsilon_start must lie in [0,1]");
  require(epsilon_end >= 0.0 && epsilon_end <= 1.0, "epsilon_end must lie in [0,1]");
  require(epsilon_decay_fraction >= 0.0, "epsilon_decay_fraction must be >= 0");
  require(epsilon_decay_steps >= 0, "epsilon_decay_steps must be >= 0");
  if (is_tabular_agent(agent)) {
    require(is_tabular_kind(env), std::string("agent ") + std::string(agent_name(agent)) +
                                      " needs a tabular environment, got " +
                                      std::string(env_name(env)));
    require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
    require(n_atoms >= 2, "n_atoms must be >= 2");
  } else {
    deep_config(seeds.front()).validate();
  }
}

EnvSpec RunConfig::env_spec() const {
  EnvSpec spec = EnvSpec::preset(env);
  spec.gamma = gamma;
  spec.max_steps = max_steps;
  return spec;
}

TabularAgentConfig RunConfig::tabular_config(std::uint64_t seed) const {
  TabularAgentConfig config;
  config.alpha = alpha;
  config.gamma = gamma;
  config.episodes = episodes;
  config.seed = seed;
  config.n_atoms = n_atoms;
  config.epsilon = EpsilonSchedule::linear_fraction(epsilon_start, epsilon_end,
                                                    epsilon_decay_fraction, episodes, max_steps);
  if (epsilon_decay_steps > 0) config.epsilon.decay_steps = epsilon_decay_steps;
  return config;
}

GanQConfig RunConfig::deep_config(std::uint64_t seed) const {
  GanQConfig config;
  config.noise_dim = noise_dim;
  config.hidden_units = hidden_units;
  config.batch_size = batch_size;
  config.n_disc = n_disc;
  config.n_gen = n_gen;
  config.lambda = lambda;
  config.alpha0 = alpha0;
  config.lr_decay_k = lr_decay_k;
  config.gamma = gamma;
  config.use_target_network = use_target_network;
  config.target_sync_period = target_sync_period;
  config.buffer_capacity = buffer_capacity;
  config.learning_starts = learning_starts;
  config.train_every = train_every;
  config.value_scale = value_scale;
  config.epsilon_start = epsilon_start;
  config.epsilon_end = epsilon_end;
  config.epsilon_decay_fraction = epsilon_decay_fraction;
  config.epsilon_decay_steps = epsilon_decay_steps;
  config.episodes = episodes;
  config.max_steps = max_steps;
  config.seed = seed;
  config.diag_every = diag_every;
  config.diag_samples = diag_samples;
  return config;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::invalid_argument("bad value '" + std::string(text) + "' for " + std::string(key) +
                              " (expected true or false)");
}

// Accepts "0, 1, 2" and inclusive ranges such as "0..9".
std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item =
        trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (item.empty()) throw std::invalid_argument("empty entry in seeds");
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      seeds.push_back(parse_number<std::uint64_t>("seeds", item));
    } else {
      const auto lo = parse_number<std::uint64_t>("seeds", trim(item.substr(0, dots)));
      const auto hi = parse_number<std::uint64_t>("seeds", trim(item.substr(dots + 2)));
      if (hi < lo) throw std::invalid_argument("descending seed range " + std::string(item));
      if (hi - lo >= 100'000) throw std::invalid_argument("seed range too long: " + std::string(item));
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return seeds;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("failed to format number");
  return std::string(buf, ptr);
}

struct Field {
  const char* key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field number_field(const char* key, T RunConfig::*member) {
  return Field{key,
               [key, member](RunConfig& c, std::string_view v) {
                 c.*member = parse_number<T>(key, v);
               },
               [member](const RunConfig& c) {
                 if constexpr (std::is_floating_point_v<T>) {
                   return format_double(c.*member);
                 } else {
                   return std::to_string(c.*member);
                 }
               }};
}

Field bool_field(const char* key, bool RunConfig::*member) {
  return Field{key, [key, member](RunConfig& c, std::string_view v) { c.*member = parse_bool(key, v); },
               [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"env", [](RunConfig& c, std::string_view v) { c.env = parse_env_name(v); },
       [](const RunConfig& c) { return std::string(env_name(c.env)); }},
      {"agent", [](RunConfig& c, std::string_view v) { c.agent = parse_agent_name(v); },
       [](const RunConfig& c) { return std::string(agent_name(c.agent)); }},
      {"seeds", [](RunConfig& c, std::string_view v) { c.seeds = parse_seeds(v); },
       [](const RunConfig& c) {
         std::string out;
         for (std::size_t i = 0; i < c.seeds.size(); ++i) {
           if (i > 0) out += ", ";
           out += std::to_string(c.seeds[i]);
         }
         return out;
       }},
      {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(v); },
       [](const RunConfig& c) { return c.output_dir; }},
      bool_field("plot", &RunConfig::plot),
      bool_field("save_checkpoints", &RunConfig::save_checkpoints),
      number_field("episodes", &RunConfig::episodes),
      number_field("max_steps", &RunConfig::max_steps),
      number_field("gamma", &RunConfig::gamma),
      number_field("epsilon_start", &RunConfig::epsilon_start),
      number_field("epsilon_end", &RunConfig::epsilon_end),
      number_field("epsilon_decay_fraction", &RunConfig::epsilon_decay_fraction),
      number_field("epsilon_decay_steps", &RunConfig::epsilon_decay_steps),
      number_field("alpha", &RunConfig::alpha),
      number_field("n_atoms", &RunConfig::n_atoms),
      number_field("noise_dim", &RunConfig::noise_dim),
      number_field("hidden_units", &RunConfig::hidden_units),
      number_field("batch_size", &RunConfig::batch_size),
      number_field("n_disc", &RunConfig::n_disc),
      number_field("n_gen", &RunConfig::n_gen),
      number_field("lambda", &RunConfig::lambda),
      number_field("alpha0", &RunConfig::alpha0),
      number_field("lr_decay_k", &RunConfig::lr_decay_k),
      bool_field("use_target_network", &RunConfig::use_target_network),
      number_field("target_sync_period", &RunConfig::target_sync_period),
      number_field("buffer_capacity", &RunConfig::buffer_capacity),
      number_field("learning_starts", &RunConfig::learning_starts),
      number_field("train_every", &RunConfig::train_every),
      number_field("value_scale", &RunConfig::value_scale),
      number_field("diag_every", &RunConfig::diag_every),
      number_field("diag_samples", &RunConfig::diag_samples),
  };
  return table;
}

const Field& find_field(std::string_view key) {
  for (const Field& field : fields()) {
    if (key == field.key) return field;
  }
  throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

}  // namespace

void set_config_field(RunConfig& config, std::string_view key, std::string_view value) {
  find_field(key).set(config, trim(value));
}

RunConfig parse_run_config(std::string_view text) {
  std::vector<Entry> entries;
  std::map<std::pair<std::string, std::string>, int> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_at(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      try {
        parse_env_name(section);
      } catch (const std::invalid_argument&) {
        fail_at(line_no, "unknown section [" + section + "]; sections are environment names");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_at(line_no, "expected key = value");
    Entry entry{section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                line_no};
    try {
      find_field(entry.key);
    } catch (const std::invalid_argument& e) {
      fail_at(line_no, e.what());
    }
    if (!section.empty() && entry.key == "env") fail_at(line_no, "env cannot be set inside a section");
    if (const auto [it, fresh] = seen.emplace(std::make_pair(section, entry.key), line_no); !fresh) {
      fail_at(line_no, "duplicate key '" + entry.key + "' (first set on line " +
                           std::to_string(it->second) + ")");
    }
    entries.push_back(std::move(entry));
  }

  EnvKind env = EnvKind::kTwoState;
  AgentKind agent = AgentKind::kGanDqn;
  for (const Entry& e : entries) {
    if (!e.section.empty()) continue;
    try {
      if (e.key == "env") env = parse_env_name(e.value);
      if (e.key == "agent") agent = parse_agent_name(e.value);
    } catch (const std::invalid_argument& err) {
      fail_at(e.line, err.what());
    }
  }
  for (const Entry& e : entries) {
    if (e.section == env_name(env) && e.key == "agent") {
      try {
        agent = parse_agent_name(e.value);
      } catch (const std::invalid_argument& err) {
        fail_at(e.line, err.what());
      }
    }
  }

  RunConfig config = RunConfig::defaults(env, agent);
  const auto apply = [&](const Entry& e) {
    try {
      find_field(e.key).set(config, e.value);
    } catch (const std::invalid_argument& err) {
      fail_at(e.line, err.what());
    }
  };
  for (const Entry& e : entries) {
    if (e.section.empty()) apply(e);
  }
  for (const Entry& e : entries) {
    if (e.section == env_name(env)) apply(e);
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

std::string serialize_run_config(const RunConfig& config) {
  std::string out;
  for (const Field& field : fields()) {
    out += field.key;
    out += " = ";
    out += field.get(config);
    out += '\n';
  }
  return out;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_run_config(config)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace ganq
