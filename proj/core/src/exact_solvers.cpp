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

#include "ganq/exact_solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace ganq {

QTable::QTable(int n_states_, int n_actions_, double fill)
    : n_states(n_states_),
      n_actions(n_actions_),
      values(static_cast<std::size_t>(n_states_) * n_actions_, fill) {}

PolicyTable::PolicyTable(int n_states_, int n_actions_)
    : n_states(n_states_),
      n_actions(n_actions_),
      probs(static_cast<std::size_t>(n_states_) * n_actions_, 0.0) {}

PolicyTable PolicyTable::uniform(int n_states, int n_actions) {
  PolicyTable policy(n_states, n_actions);
  std::fill(policy.probs.begin(), policy.probs.end(), 1.0 / n_actions);
  return policy;
}

PolicyTable PolicyTable::deterministic(const std::vector<int>& actions, int n_actions) {
  PolicyTable policy(static_cast<int>(actions.size()), n_actions);
  for (std::size_t s = 0; s < actions.size(); ++s) {
    if (actions[s] < 0 || actions[s] >= n_actions) {
      throw std::out_of_range("PolicyTable::deterministic: action out of range");
    }
    policy(static_cast<int>(s), actions[s]) = 1.0;
  }
  return policy;
}

void PolicyTable::validate() const {
  for (int s = 0; s < n_states; ++s) {
    double total = 0.0;
    for (int a = 0; a < n_actions; ++a) {
      if ((*this)(s, a) < 0.0) throw std::invalid_argument("PolicyTable: negative probability");
      total += (*this)(s, a);
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw std::invalid_argument("PolicyTable: row does not sum to 1");
    }
  }
}

int argmax_action(std::span<const double> values) {
  int best = 0;
  for (std::size_t a = 1; a < values.size(); ++a) {
    if (values[a] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(a);
  }
  return best;
}

namespace {

void check_policy_shape(const TabularMdp& mdp, const PolicyTable& policy) {
  if (policy.n_states != mdp.n_states || policy.n_actions != mdp.n_actions) {
    throw std::invalid_argument("policy shape does not match the MDP");
  }
  policy.validate();
}

}  // namespace

std::vector<double> solve_value_exact(const TabularMdp& mdp, const PolicyTable& policy) {
  check_policy_shape(mdp, policy);
  const int n = mdp.n_states;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < mdp.n_actions; ++a) {
      const double pi = policy(s, a);
      if (pi == 0.0) continue;
      rhs(s) += pi * mdp.r(s, a);
      for (int s2 = 0; s2 < n; ++s2) system(s, s2) -= mdp.gamma * pi * mdp.p(s, a, s2);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    throw std::runtime_error("solve_value_exact: I - gamma P_pi is singular");
  }
  const Eigen::VectorXd v = lu.solve(rhs);
  return {v.data(), v.data() + n};
}

QTable q_from_v(const TabularMdp& mdp, const std::vector<double>& values, double gamma) {
  if (static_cast<int>(values.size()) != mdp.n_states) {
    throw std::invalid_argument("q_from_v: value vector length does not match the MDP");
  }
  QTable q(mdp.n_states, mdp.n_actions);
  for (int s = 0; s < mdp.n_states; ++s) {
    for (int a = 0; a < mdp.n_actions; ++a) {
      double expected = 0.0;
      for (int s2 = 0; s2 < mdp.n_states; ++s2) expected += mdp.p(s, a, s2) * values[s2];
      q(s, a) = mdp.r(s, a) + gamma * expected;
    }
  }
  return q;
}

std::vector<double> value_iteration_policy(const TabularMdp& mdp, const PolicyTable& policy,
                                           int iterations) {
  check_policy_shape(mdp, policy);
  std::vector<double> v(static_cast<std::size_t>(mdp.n_states), 0.0);
  for (int it = 0; it < iterations; ++it) {
    const QTable q = q_from_v(mdp, v, mdp.gamma);
    for (int s = 0; s < mdp.n_states; ++s) {
      double total = 0.0;
      for (int a = 0; a < mdp.n_actions; ++a) total += policy(s, a) * q(s, a);
      v[s] = total;
    }
  }
  return v;
}

std::vector<double> value_iteration_optimal(const TabularMdp& mdp, int iterations) {
  std::vector<double> v(static_cast<std::size_t>(mdp.n_states), 0.0);
  for (int it = 0; it < iterations; ++it) {
    const QTable q = q_from_v(mdp, v, mdp.gamma);
    for (int s = 0; s < mdp.n_states; ++s) {
      const auto row = q.row(s);
      v[s] = *std::max_element(row.begin(), row.end());
    }
  }
  return v;
}

OptimalSolution solve_optimal(const TabularMdp& mdp) {
  std::vector<int> actions(static_cast<std::size_t>(mdp.n_states), 0);
  OptimalSolution solution;
  for (int it = 0; it < 10'000; ++it) {
    const auto policy = PolicyTable::deterministic(actions, mdp.n_actions);
    solution.values = solve_value_exact(mdp, policy);
    solution.q = q_from_v(mdp, solution.values, mdp.gamma);
    bool stable = true;
    for (int s = 0; s < mdp.n_states; ++s) {
      const int best = argmax_action(solution.q.row(s));
      if (solution.q(s, best) > solution.q(s, actions[s]) + 1e-12) {
        actions[s] = best;
        stable = false;
      }
    }
    if (stable) {
      solution.greedy_actions = actions;
      return solution;
    }
  }
  throw std::runtime_error("solve_optimal: policy iteration did not converge");
}

// ---------------------------------------------------------------------------

double CategoricalDist::mean() const {
  double total = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) total += support[k] * probs[k];
  return total;
}

void CategoricalDist::validate(double tolerance) const {
  if (support.empty() || support.size() != probs.size()) {
    throw std::invalid_argument("CategoricalDist: support and probabilities differ in size");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("CategoricalDist: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw std::invalid_argument("CategoricalDist: probabilities sum to " + std::to_string(total));
  }
  for (std::size_t k = 1; k < support.size(); ++k) {
    if (!(support[k] > support[k - 1])) {
      throw std::invalid_argument("CategoricalDist: support must be strictly increasing");
    }
  }
}

CategoricalDist CategoricalDist::dirac_on(std::vector<double> support, double location) {
  CategoricalDist dist;
  dist.probs.assign(support.size(), 0.0);
  dist.support = std::move(support);
  project_mass(dist.support, location, 1.0, dist.probs);
  return dist;
}

std::vector<double> make_support(double v_min, double v_max, int n_atoms) {
  if (n_atoms < 2 || !(v_max > v_min)) {
    throw std::invalid_argument("make_support: need at least two atoms and v_max > v_min");
  }
  std::vector<double> support(static_cast<std::size_t>(n_atoms));
  const double delta = (v_max - v_min) / (n_atoms - 1);
  for (int k = 0; k < n_atoms; ++k) support[k] = v_min + delta * k;
  support.back() = v_max;
  return support;
}

std::vector<double> support_for_mdp(const TabularMdp& mdp, int n_atoms) {
  const auto [lo, hi] = std::minmax_element(mdp.rewards.begin(), mdp.rewards.end());
  double v_min = *lo / (1.0 - mdp.gamma);
  double v_max = *hi / (1.0 - mdp.gamma);
  if (!(v_max > v_min)) {
    v_min -= 1.0;
    v_max += 1.0;
  }
  return make_support(v_min, v_max, n_atoms);
}

void project_mass(std::span<const double> support, double location, double mass,
                  std::span<double> probs) {
  if (support.empty()) throw std::invalid_argument("project_mass: empty support");
  if (location <= support.front()) {
    probs.front() += mass;
    return;
  }
  if (location >= support.back()) {
    probs.back() += mass;
    return;
  }
  const auto upper_it = std::upper_bound(support.begin(), support.end(), location);
  const auto upper = static_cast<std::size_t>(upper_it - support.begin());
  const std::size_t lower = upper - 1;
  const double width = support[upper] - support[lower];
  const double upper_share = (location - support[lower]) / width;
  probs[lower] += mass * (1.0 - upper_share);
  probs[upper] += mass * upper_share;
}

ValueDistTable::ValueDistTable(std::vector<double> support, int n_states, int n_actions,
                               double initial)
    : support_(std::move(support)), n_states_(n_states), n_actions_(n_actions) {
  if (support_.empty()) throw std::invalid_argument("ValueDistTable: empty support");
  if (n_states <= 0 || n_actions <= 0) throw std::invalid_argument("ValueDistTable: empty shape");
  probs_.assign(static_cast<std::size_t>(n_states) * n_actions * support_.size(), 0.0);
  for (int s = 0; s < n_states; ++s) {
    for (int a = 0; a < n_actions; ++a) project_mass(support_, initial, 1.0, probs(s, a));
  }
}

CategoricalDist ValueDistTable::dist(int s, int a) const {
  const auto p = probs(s, a);
  return {support_, {p.begin(), p.end()}};
}

void ValueDistTable::set(int s, int a, const CategoricalDist& dist) {
  if (dist.support != support_) throw std::invalid_argument("ValueDistTable::set: support differs");
  std::copy(dist.probs.begin(), dist.probs.end(), probs(s, a).begin());
}

double ValueDistTable::mean(int s, int a) const {
  const auto p = probs(s, a);
  double total = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) total += support_[k] * p[k];
  return total;
}

QTable ValueDistTable::means() const {
  QTable q(n_states_, n_actions_);
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) q(s, a) = mean(s, a);
  }
  return q;
}

double ValueDistTable::max_normalization_error() const {
  double worst = 0.0;
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const auto p = probs(s, a);
      worst = std::max(worst, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
    }
  }
  return worst;
}

ValueDistTable distributional_backup(const ValueDistTable& z, const TabularMdp& mdp,
                                     const PolicyTable& policy, double gamma) {
  if (z.support().empty()) throw std::invalid_argument("distributional_backup: empty support");
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("distributional_backup: gamma must lie in [0,1)");
  }
  if (z.n_states() != mdp.n_states || z.n_actions() != mdp.n_actions) {
    throw std::invalid_argument("distributional_backup: table shape does not match the MDP");
  }
  check_policy_shape(mdp, policy);

  const auto& support = z.support();
  ValueDistTable out = z;
  for (int s = 0; s < mdp.n_states; ++s) {
    for (int a = 0; a < mdp.n_actions; ++a) {
      auto target = out.probs(s, a);
      std::fill(target.begin(), target.end(), 0.0);
      const double reward = mdp.r(s, a);
      for (int s2 = 0; s2 < mdp.n_states; ++s2) {
        const double p_next = mdp.p(s, a, s2);
        if (p_next == 0.0) continue;
        for (int a2 = 0; a2 < mdp.n_actions; ++a2) {
          const double weight = p_next * policy(s2, a2);
          if (weight == 0.0) continue;
          const auto source = z.probs(s2, a2);
          for (std::size_t k = 0; k < support.size(); ++k) {
            if (source[k] == 0.0) continue;
            project_mass(support, reward + gamma * support[k], weight * source[k], target);
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double wasserstein_discrete(std::span<const double> atoms_x, std::span<const double> weights_x,
                            std::span<const double> atoms_y, std::span<const double> weights_y,
                            double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein: p must be >= 1");
  if (atoms_x.empty() || atoms_y.empty()) throw std::invalid_argument("wasserstein: empty input");
  if (atoms_x.size() != weights_x.size() || atoms_y.size() != weights_y.size()) {
    throw std::invalid_argument("wasserstein: atoms and weights differ in size");
  }

  // Sorted atoms with normalized cumulative weights; the final breakpoint is
  // pinned to exactly 1 so rounding never leaves a gap at the top.
  const auto cumulative = [](std::span<const double> atoms, std::span<const double> weights) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(atoms.size());
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!(weights[i] >= 0.0)) throw std::invalid_argument("wasserstein: negative weight");
      if (weights[i] > 0.0) pairs.emplace_back(atoms[i], weights[i]);
      total += weights[i];
    }
    if (!(total > 0.0)) throw std::invalid_argument("wasserstein: zero total weight");
    std::sort(pairs.begin(), pairs.end());
    double running = 0.0;
    for (auto& [atom, w] : pairs) {
      running += w / total;
      w = running;
    }
    pairs.back().second = 1.0;
    return pairs;
  };

  const auto xs = cumulative(atoms_x, weights_x);
  const auto ys = cumulative(atoms_y, weights_y);
  std::size_t i = 0, j = 0;
  double u = 0.0;
  double integral = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double next = std::min(xs[i].second, ys[j].second);
    const double gap = std::abs(xs[i].first - ys[j].first);
    if (next > u) integral += (next - u) * (p == 1.0 ? gap : std::pow(gap, p));
    u = next;
    const bool advance_x = xs[i].second <= next;
    const bool advance_y = ys[j].second <= next;
    if (advance_x) ++i;
    if (advance_y) ++j;
  }
  return p == 1.0 ? integral : std::pow(integral, 1.0 / p);
}

double wasserstein_empirical(std::span<const double> xs, std::span<const double> ys, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_empirical: p must be >= 1");
  if (xs.empty() || ys.empty()) throw std::invalid_argument("wasserstein_empirical: empty input");
  if (xs.size() != ys.size()) {
    const std::vector<double> wx(xs.size(), 1.0);
    const std::vector<double> wy(ys.size(), 1.0);
    return wasserstein_discrete(xs, wx, ys, wy, p);
  }
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double gap = std::abs(a[i] - b[i]);
    total += p == 1.0 ? gap : std::pow(gap, p);
  }
  total /= static_cast<double>(a.size());
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double wasserstein_categorical(const CategoricalDist& d1, const CategoricalDist& d2, double p) {
  d1.validate();
  d2.validate();
  return wasserstein_discrete(d1.support, d1.probs, d2.support, d2.probs, p);
}

double wasserstein_max(const ValueDistTable& z1, const ValueDistTable& z2, double p) {
  if (z1.n_states() != z2.n_states() || z1.n_actions() != z2.n_actions()) {
    throw std::invalid_argument("wasserstein_max: table shapes differ");
  }
  double worst = 0.0;
  for (int s = 0; s < z1.n_states(); ++s) {
    for (int a = 0; a < z1.n_actions(); ++a) {
      worst = std::max(worst, wasserstein_discrete(z1.support(), z1.probs(s, a), z2.support(),
                                                   z2.probs(s, a), p));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

ActionPolicy table_policy(const PolicyTable& policy) {
  return [policy](const Observation& obs, Rng& rng) {
    if (!obs.state_id) throw std::invalid_argument("table_policy: observation has no state id");
    const int s = *obs.state_id;
    double u = rng.uniform();
    for (int a = 0; a < policy.n_actions; ++a) {
      u -= policy(s, a);
      if (u < 0.0) return a;
    }
    for (int a = policy.n_actions - 1; a >= 0; --a) {
      if (policy(s, a) > 0.0) return a;
    }
    return 0;
  };
}

std::vector<double> monte_carlo_returns(const Environment& env, const ActionPolicy& policy,
                                        int start_state, int start_action, int n_rollouts,
                                        Rng& rng, int horizon) {
  if (n_rollouts < 1) throw std::invalid_argument("monte_carlo_returns: n_rollouts must be >= 1");
  if (!env.is_tabular()) {
    throw std::logic_error("monte_carlo_returns: requires a tabular environment");
  }
  TabularEnv sim(env.tabular_dynamics(), horizon > 0 ? horizon : env.max_steps(), rng.next_u64(),
                 std::string(env.name()), env.kind(), env.n_states());
  const double gamma = sim.gamma();
  std::vector<double> returns;
  returns.reserve(static_cast<std::size_t>(n_rollouts));
  for (int i = 0; i < n_rollouts; ++i) {
    sim.reset_to_state(start_state);
    StepResult step = sim.step(start_action);
    double total = step.reward;
    double discount = gamma;
    while (!step.done()) {
      step = sim.step(policy(step.obs, rng));
      total += discount * step.reward;
      discount *= gamma;
    }
    returns.push_back(total);
  }
  return returns;
}

int effective_horizon(double gamma, double tail) {
  if (gamma <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::log(tail) / std::log(gamma))));
}

// ---------------------------------------------------------------------------

double quadratic_dirac_equilibrium(std::span<const double> target_samples) {
  if (target_samples.empty()) {
    throw std::invalid_argument("quadratic_dirac_equilibrium: empty sample");
  }
  double second_moment = 0.0;
  for (double x : target_samples) second_moment += x * x;
  return std::sqrt(second_moment / static_cast<double>(target_samples.size()));
}

BanditReport bandit_misordering_demo(double epsilon) {
  BanditReport report;
  report.epsilon = epsilon;
  const double arm_a[] = {0.5 + epsilon};
  const double arm_b[] = {0.0, 1.0};  // exact Bernoulli(1/2) law
  report.true_mean_a = 0.5 + epsilon;
  report.true_mean_b = 0.5;
  report.equilibrium_a = quadratic_dirac_equilibrium(arm_a);
  report.equilibrium_b = quadratic_dirac_equilibrium(arm_b);

  constexpr double kTie = 1e-12;
  report.truth_prefers_a = report.true_mean_a > report.true_mean_b;
  report.equilibrium_prefers_a = report.equilibrium_a > report.equilibrium_b + kTie;
  const bool equilibrium_prefers_b = report.equilibrium_b > report.equilibrium_a + kTie;
  report.misordered = report.truth_prefers_a && equilibrium_prefers_b;
  if (report.misordered) {
    report.verdict = "equilibrium prefers arm B; truth prefers arm A";
  } else {
    report.verdict = "no misordering";
  }
  return report;
}

}  // namespace ganq
