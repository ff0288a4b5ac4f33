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

#ifndef GANQ_EXACT_SOLVERS_HPP_
#define GANQ_EXACT_SOLVERS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ganq/environments.hpp"
#include "ganq/rng.hpp"

namespace ganq {

// Table of per-(state, action) scalars, row-major.
struct QTable {
  int n_states = 0;
  int n_actions = 0;
  std::vector<double> values;

  QTable() = default;
  QTable(int n_states, int n_actions, double fill = 0.0);

  double& operator()(int s, int a) { return values[index(s, a)]; }
  double operator()(int s, int a) const { return values[index(s, a)]; }
  std::span<const double> row(int s) const {
    return {values.data() + index(s, 0), static_cast<std::size_t>(n_actions)};
  }

 private:
  std::size_t index(int s, int a) const {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(n_actions) +
           static_cast<std::size_t>(a);
  }
};

// Action probabilities pi(a|s); each row sums to 1.
struct PolicyTable {
  int n_states = 0;
  int n_actions = 0;
  std::vector<double> probs;

  PolicyTable() = default;
  PolicyTable(int n_states, int n_actions);

  static PolicyTable uniform(int n_states, int n_actions);
  static PolicyTable deterministic(const std::vector<int>& actions, int n_actions);

  double& operator()(int s, int a) { return probs[static_cast<std::size_t>(s) * n_actions + a]; }
  double operator()(int s, int a) const {
    return probs[static_cast<std::size_t>(s) * n_actions + a];
  }
  void validate() const;
};

// Argmax over actions, ties to the lowest index.
int argmax_action(std::span<const double> values);

// ----------------------------------------------------------------------------
// Scalar Bellman solutions.

// V_pi = (I - gamma P_pi)^{-1} R_pi via LU with full pivoting. Throws
// std::runtime_error when the system is singular.
std::vector<double> solve_value_exact(const TabularMdp& mdp, const PolicyTable& policy);

// Q[s][a] = R[s][a] + gamma * sum_s' P[s][a][s'] V(s').
QTable q_from_v(const TabularMdp& mdp, const std::vector<double>& values, double gamma);

// Iterative policy evaluation, `iterations` synchronous sweeps from V = 0.
std::vector<double> value_iteration_policy(const TabularMdp& mdp, const PolicyTable& policy,
                                           int iterations);
// Optimal values by synchronous value iteration.
std::vector<double> value_iteration_optimal(const TabularMdp& mdp, int iterations);

struct OptimalSolution {
  std::vector<double> values;
  QTable q;
  std::vector<int> greedy_actions;
};

// Policy iteration with exact evaluation; V*, Q* and a greedy policy.
OptimalSolution solve_optimal(const TabularMdp& mdp);

// ----------------------------------------------------------------------------
// Distributions.

struct CategoricalDist {
  std::vector<double> support;  // strictly increasing atoms
  std::vector<double> probs;

  double mean() const;
  // Throws std::invalid_argument unless normalized to within `tolerance`.
  void validate(double tolerance = 1e-9) const;
  static CategoricalDist dirac_on(std::vector<double> support, double location);
};

std::vector<double> make_support(double v_min, double v_max, int n_atoms);
// Spans [min(R)/(1-gamma), max(R)/(1-gamma)], widened if degenerate.
std::vector<double> support_for_mdp(const TabularMdp& mdp, int n_atoms = 51);

// Adds `mass` at `location` onto the support by splitting between the two
// neighboring atoms in proportion to proximity; clips outside the support.
void project_mass(std::span<const double> support, double location, double mass,
                  std::span<double> probs);

class ValueDistTable {
 public:
  ValueDistTable() = default;
  // Every cell starts as the projected Dirac at `initial`.
  ValueDistTable(std::vector<double> support, int n_states, int n_actions, double initial = 0.0);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  const std::vector<double>& support() const { return support_; }
  int n_atoms() const { return static_cast<int>(support_.size()); }

  std::span<double> probs(int s, int a) {
    return {probs_.data() + offset(s, a), support_.size()};
  }
  std::span<const double> probs(int s, int a) const {
    return {probs_.data() + offset(s, a), support_.size()};
  }
  CategoricalDist dist(int s, int a) const;
  void set(int s, int a, const CategoricalDist& dist);
  double mean(int s, int a) const;
  QTable means() const;
  // Largest |sum - 1| over all cells.
  double max_normalization_error() const;

 private:
  std::size_t offset(int s, int a) const {
    return (static_cast<std::size_t>(s) * n_actions_ + a) * support_.size();
  }

  std::vector<double> support_;
  int n_states_ = 0;
  int n_actions_ = 0;
  std::vector<double> probs_;
};

// Law of R(s,a) + gamma Z(S', A') with S' ~ P(.|s,a), A' ~ pi(.|S'),
// projected onto the shared support.
ValueDistTable distributional_backup(const ValueDistTable& z, const TabularMdp& mdp,
                                     const PolicyTable& policy, double gamma);

// ----------------------------------------------------------------------------
// Wasserstein distances between one-dimensional distributions.

// Exact W_p between two discrete distributions given as (atoms, weights),
// integrating |F^{-1}(u) - G^{-1}(u)|^p over u in [0, 1]. Atoms need not be
// sorted; weights must be nonnegative with positive totals.
double wasserstein_discrete(std::span<const double> atoms_x, std::span<const double> weights_x,
                            std::span<const double> atoms_y, std::span<const double> weights_y,
                            double p);

// W_p between empirical distributions. Equal lengths use the sorted
// coupling; otherwise the quantile integral.
double wasserstein_empirical(std::span<const double> xs, std::span<const double> ys, double p);

double wasserstein_categorical(const CategoricalDist& d1, const CategoricalDist& d2, double p);

// sup over (s, a) of the per-cell W_p.
double wasserstein_max(const ValueDistTable& z1, const ValueDistTable& z2, double p);

// ----------------------------------------------------------------------------
// Monte-Carlo returns.

using ActionPolicy = std::function<int(const Observation&, Rng&)>;

ActionPolicy table_policy(const PolicyTable& policy);

// Discounted returns of rollouts that start in `start_state`, take
// `start_action`, then follow `policy`. A rollout lasts at most `horizon`
// steps (the environment's max_steps when horizon <= 0). Tabular only.
std::vector<double> monte_carlo_returns(const Environment& env, const ActionPolicy& policy,
                                        int start_state, int start_action, int n_rollouts,
                                        Rng& rng, int horizon = 0);

// Smallest horizon with gamma^H below `tail`.
int effective_horizon(double gamma, double tail = 1e-4);

// ----------------------------------------------------------------------------
// Dirac generator against a quadratic critic m x^2.
//
// The critic's payoff m (g^2 - E[x^2]) is flat in m only when g^2 = E[x^2],
// so the equilibrium Dirac location is sqrt(E[x^2]).
double quadratic_dirac_equilibrium(std::span<const double> target_samples);

struct BanditReport {
  double epsilon = 0.0;
  double true_mean_a = 0.0;
  double true_mean_b = 0.0;
  double equilibrium_a = 0.0;
  double equilibrium_b = 0.0;
  bool truth_prefers_a = false;
  bool equilibrium_prefers_a = false;
  bool misordered = false;
  std::string verdict;
};

// Arm A pays 1/2 + epsilon deterministically; arm B pays Bernoulli(1/2).
// Misordering occurs for 0 < epsilon < 1/sqrt(2) - 1/2.
BanditReport bandit_misordering_demo(double epsilon);

}  // namespace ganq

#endif  // GANQ_EXACT_SOLVERS_HPP_
