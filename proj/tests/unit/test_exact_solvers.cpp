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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "support/random_mdp.hpp"

namespace ganq {
namespace {

using testing::random_mdp;
using testing::random_policy;
using testing::random_probs;
using testing::random_value_dists;

double spacing(const std::vector<double>& support) { return support[1] - support[0]; }

// Direct sweep V <- R_pi + gamma P_pi V, written independently of the
// library's iterative evaluator.
std::vector<double> sweep_oracle(const TabularMdp& mdp, const PolicyTable& pi, int iterations) {
  std::vector<double> v(static_cast<std::size_t>(mdp.n_states), 0.0);
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> next(v.size(), 0.0);
    for (int s = 0; s < mdp.n_states; ++s) {
      for (int a = 0; a < mdp.n_actions; ++a) {
        double backup = mdp.r(s, a);
        for (int s2 = 0; s2 < mdp.n_states; ++s2) {
          backup += mdp.gamma * mdp.p(s, a, s2) * v[static_cast<std::size_t>(s2)];
        }
        next[static_cast<std::size_t>(s)] += pi(s, a) * backup;
      }
    }
    v = next;
  }
  return v;
}

PolicyTable always(int n_states, int n_actions, int action) {
  return PolicyTable::deterministic(std::vector<int>(static_cast<std::size_t>(n_states), action),
                                    n_actions);
}

TEST(SolveValueExactTest, TwoStateAlwaysStay) {
  const TabularMdp mdp = two_state_mdp();
  const auto v = solve_value_exact(mdp, always(2, 2, 0));
  EXPECT_NEAR(v[0], 20.0 / (1.0 - 0.95), 1e-8);
}

TEST(SolveValueExactTest, TwoStateOptimal) {
  const TabularMdp mdp = two_state_mdp();
  const auto v = solve_value_exact(mdp, PolicyTable::deterministic({0, 1}, 2));
  EXPECT_NEAR(v[0], 400.0, 1e-8);
  EXPECT_NEAR(v[1], -2.0 + 0.95 * 400.0, 1e-8);
  const QTable q = q_from_v(mdp, v, mdp.gamma);
  EXPECT_NEAR(q(0, 0), 20.0 + 0.95 * 400.0, 1e-8);
  EXPECT_NEAR(q(0, 1), -10.0 + 0.95 * 378.0, 1e-8);

  const OptimalSolution opt = solve_optimal(mdp);
  EXPECT_NEAR(opt.values[0], 400.0, 1e-8);
  EXPECT_NEAR(opt.values[1], 378.0, 1e-8);
  EXPECT_NEAR(opt.q(0, 1), 349.1, 1e-8);
  EXPECT_EQ(opt.greedy_actions, (std::vector<int>{0, 1}));
}

TEST(SolveValueExactTest, GammaZeroGivesExpectedReward) {
  Rng rng(1, 1);
  const TabularMdp mdp = random_mdp(rng, 5, 3, 0.0);
  const PolicyTable pi = random_policy(rng, 5, 3);
  const auto v = solve_value_exact(mdp, pi);
  const QTable q = q_from_v(mdp, v, 0.0);
  for (int s = 0; s < 5; ++s) {
    double r_pi = 0.0;
    for (int a = 0; a < 3; ++a) {
      r_pi += pi(s, a) * mdp.r(s, a);
      EXPECT_EQ(q(s, a), mdp.r(s, a));
    }
    EXPECT_NEAR(v[static_cast<std::size_t>(s)], r_pi, 1e-14);
  }
}

TEST(SolveValueExactTest, MatchesSweepsAndHasSmallResidual) {
  Rng rng(2, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_int(8));
    const int m = 1 + static_cast<int>(rng.uniform_int(4));
    const TabularMdp mdp = random_mdp(rng, n, m, rng.uniform(0.0, 0.95), 5.0);
    const PolicyTable pi = random_policy(rng, n, m);
    const auto exact = solve_value_exact(mdp, pi);
    const auto oracle = sweep_oracle(mdp, pi, 10000);
    const auto library = value_iteration_policy(mdp, pi, 10000);
    const QTable q = q_from_v(mdp, exact, mdp.gamma);
    for (int s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      ASSERT_NEAR(exact[i], oracle[i], 1e-8);
      ASSERT_NEAR(library[i], oracle[i], 1e-8);
      double bellman = 0.0;
      for (int a = 0; a < m; ++a) bellman += pi(s, a) * q(s, a);
      ASSERT_LT(std::abs(exact[i] - bellman), 1e-10);
    }
  }
}

TEST(SolveValueExactTest, ShapeErrors) {
  const TabularMdp mdp = two_state_mdp();
  EXPECT_THROW(solve_value_exact(mdp, PolicyTable::uniform(3, 2)), std::invalid_argument);
  EXPECT_THROW(q_from_v(mdp, {1.0}, 0.9), std::invalid_argument);
}

TEST(SolveOptimalTest, MatchesValueIteration) {
  Rng rng(3, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_int(8));
    const int m = 1 + static_cast<int>(rng.uniform_int(4));
    const TabularMdp mdp = random_mdp(rng, n, m, rng.uniform(0.0, 0.9));
    const auto opt = solve_optimal(mdp);
    const auto vi = value_iteration_optimal(mdp, 5000);
    for (int s = 0; s < n; ++s) {
      ASSERT_NEAR(opt.values[static_cast<std::size_t>(s)], vi[static_cast<std::size_t>(s)], 1e-8);
      ASSERT_EQ(opt.greedy_actions[static_cast<std::size_t>(s)], argmax_action(opt.q.row(s)));
    }
  }
}

TEST(PolicyTableTest, Validation) {
  PolicyTable p(1, 2);
  p(0, 0) = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p(0, 1) = 0.5;
  EXPECT_NO_THROW(p.validate());
  EXPECT_THROW(PolicyTable::deterministic({2}, 2), std::out_of_range);
  EXPECT_EQ(argmax_action(std::vector<double>{1.0, 3.0, 3.0}), 1);
}

TEST(ProjectionTest, SplitsMassLinearlyAndClips) {
  const auto support = make_support(0.0, 4.0, 5);
  std::vector<double> probs(5, 0.0);
  project_mass(support, 1.25, 1.0, probs);
  EXPECT_DOUBLE_EQ(probs[1], 0.75);
  EXPECT_DOUBLE_EQ(probs[2], 0.25);
  project_mass(support, -3.0, 0.5, probs);
  EXPECT_DOUBLE_EQ(probs[0], 0.5);
  project_mass(support, 9.0, 0.5, probs);
  EXPECT_DOUBLE_EQ(probs[4], 0.5);
  project_mass(support, 3.0, 0.25, probs);
  EXPECT_DOUBLE_EQ(probs[3], 0.25);
}

TEST(ProjectionTest, PreservesMassAndInteriorMean) {
  Rng rng(4, 1);
  const auto support = make_support(-3.0, 7.0, 21);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> probs(support.size(), 0.0);
    const double x = rng.uniform(-3.0, 7.0);
    const double w = rng.uniform();
    project_mass(support, x, w, probs);
    const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
    double mean = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) mean += probs[i] * support[i];
    ASSERT_NEAR(mass, w, 1e-12);
    ASSERT_NEAR(mean, w * x, 1e-12);
  }
}

TEST(CategoricalDistTest, ValidationAndMean) {
  CategoricalDist d{{0.0, 1.0, 2.0}, {0.25, 0.5, 0.25}};
  EXPECT_NO_THROW(d.validate());
  EXPECT_DOUBLE_EQ(d.mean(), 1.0);
  d.probs[0] = 0.3;
  EXPECT_THROW(d.validate(), std::invalid_argument);
  CategoricalDist unsorted{{1.0, 0.0}, {0.5, 0.5}};
  EXPECT_THROW(unsorted.validate(), std::invalid_argument);
  EXPECT_DOUBLE_EQ(CategoricalDist::dirac_on({0.0, 2.0}, 0.5).probs[1], 0.25);
}

TEST(DistributionalBackupTest, GammaZeroGivesRewardDiracs) {
  Rng rng(5, 1);
  TabularMdp mdp = random_mdp(rng, 5, 2, 0.0);
  for (int s = 0; s < 5; ++s) {
    for (int a = 0; a < 2; ++a) mdp.r(s, a) = static_cast<double>(s - a);
  }
  const auto support = make_support(-5.0, 5.0, 11);
  const auto z = random_value_dists(rng, support, 5, 2);
  const auto out = distributional_backup(z, mdp, random_policy(rng, 5, 2), 0.0);
  for (int s = 0; s < 5; ++s) {
    for (int a = 0; a < 2; ++a) {
      const auto probs = out.probs(s, a);
      const auto hit = static_cast<std::size_t>(s - a + 5);
      for (std::size_t i = 0; i < probs.size(); ++i) {
        EXPECT_NEAR(probs[i], i == hit ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(DistributionalBackupTest, MeanMatchesScalarBackupAndMassIsPreserved) {
  Rng rng(6, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const TabularMdp mdp = random_mdp(rng, 5, 3, rng.uniform(0.1, 0.95));
    const PolicyTable pi = random_policy(rng, 5, 3);
    const auto support = support_for_mdp(mdp, 51);
    const auto z = random_value_dists(rng, support, 5, 3);
    const auto out = distributional_backup(z, mdp, pi, mdp.gamma);
    ASSERT_LT(out.max_normalization_error(), 1e-12);
    // V(s') = sum_a' pi(a'|s') E Z(s', a'); then the scalar backup.
    std::vector<double> v(5, 0.0);
    for (int s = 0; s < 5; ++s) {
      for (int a = 0; a < 3; ++a) v[static_cast<std::size_t>(s)] += pi(s, a) * z.mean(s, a);
    }
    const QTable q = q_from_v(mdp, v, mdp.gamma);
    for (int s = 0; s < 5; ++s) {
      for (int a = 0; a < 3; ++a) ASSERT_NEAR(out.mean(s, a), q(s, a), 0.5 * spacing(support));
    }
  }
}

TEST(DistributionalBackupTest, FixpointMeansMatchExactValues) {
  const TabularMdp mdp = two_state_mdp();
  const PolicyTable pi = PolicyTable::deterministic({0, 1}, 2);
  const auto support = support_for_mdp(mdp, 51);
  ValueDistTable z(support, 2, 2);
  for (int i = 0; i < 2000; ++i) z = distributional_backup(z, mdp, pi, mdp.gamma);
  EXPECT_NEAR(z.mean(0, 0), 400.0, spacing(support));
  EXPECT_NEAR(z.mean(0, 1), 349.1, spacing(support));

  Rng rng(7, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const TabularMdp r = random_mdp(rng, 5, 3, rng.uniform(0.1, 0.9));
    const PolicyTable p = random_policy(rng, 5, 3);
    const auto sup = support_for_mdp(r, 51);
    ValueDistTable zr(sup, 5, 3);
    for (int i = 0; i < 300; ++i) zr = distributional_backup(zr, r, p, r.gamma);
    const QTable q = q_from_v(r, solve_value_exact(r, p), r.gamma);
    for (int s = 0; s < 5; ++s) {
      for (int a = 0; a < 3; ++a) ASSERT_NEAR(zr.mean(s, a), q(s, a), spacing(sup));
    }
  }
}

TEST(DistributionalBackupTest, ContractsMaximalWasserstein) {
  Rng rng(8, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const double gamma = rng.uniform(0.1, 0.95);
    const TabularMdp mdp = random_mdp(rng, 5, 3, gamma);
    const PolicyTable pi = random_policy(rng, 5, 3);
    const auto support = support_for_mdp(mdp, 51);
    const auto z1 = random_value_dists(rng, support, 5, 3);
    const auto z2 = random_value_dists(rng, support, 5, 3);
    for (double p : {1.0, 2.0}) {
      const double before = wasserstein_max(z1, z2, p);
      const double after = wasserstein_max(distributional_backup(z1, mdp, pi, gamma),
                                           distributional_backup(z2, mdp, pi, gamma), p);
      ASSERT_LE(after, gamma * before + spacing(support));
    }
  }
}

TEST(DistributionalBackupTest, Errors) {
  const TabularMdp mdp = two_state_mdp();
  ValueDistTable z(make_support(0.0, 1.0, 3), 2, 2);
  EXPECT_THROW(distributional_backup(z, mdp, PolicyTable::uniform(2, 2), 1.0),
               std::invalid_argument);
  ValueDistTable wrong(make_support(0.0, 1.0, 3), 3, 2);
  EXPECT_THROW(distributional_backup(wrong, mdp, PolicyTable::uniform(2, 2), 0.5),
               std::invalid_argument);
  EXPECT_THROW(ValueDistTable({}, 2, 2), std::invalid_argument);
}

TEST(WassersteinTest, Examples) {
  const std::vector<double> a{0.0, 1.0, 3.0};
  EXPECT_EQ(wasserstein_empirical(a, a, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(wasserstein_empirical(std::vector<double>{0.0}, std::vector<double>{1.0}, 1.0),
                   1.0);
  EXPECT_DOUBLE_EQ(wasserstein_empirical(std::vector<double>{0.0, 1.0},
                                         std::vector<double>{0.5, 0.5}, 1.0),
                   0.5);
  // Unequal lengths: {0, 1} against {0.5}.
  EXPECT_DOUBLE_EQ(wasserstein_empirical(std::vector<double>{0.0, 1.0},
                                         std::vector<double>{0.5}, 1.0),
                   0.5);
  const auto support = make_support(-2.0, 2.0, 5);
  const auto d1 = CategoricalDist::dirac_on(support, -1.0);
  const auto d2 = CategoricalDist::dirac_on(support, 2.0);
  EXPECT_DOUBLE_EQ(wasserstein_categorical(d1, d2, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(wasserstein_categorical(d1, d2, 2.0), 3.0);
  EXPECT_EQ(wasserstein_categorical(d1, d1, 1.0), 0.0);
}

TEST(WassersteinTest, SortedCouplingFormula) {
  Rng rng(9, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(20);
    std::vector<double> xs(n), ys(n);
    for (auto& x : xs) x = rng.normal();
    for (auto& y : ys) y = rng.uniform(-2.0, 2.0);
    const double p = rng.uniform(1.0, 3.0);
    auto sx = xs;
    auto sy = ys;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::abs(sx[i] - sy[i]), p);
    ASSERT_NEAR(wasserstein_empirical(xs, ys, p), std::pow(acc / n, 1.0 / p), 1e-12);
  }
}

// W_1 equals the integral of |F - G|; compute it from the CDFs on the
// merged grid as an independent oracle for unequal sample sizes.
double w1_cdf_oracle(std::vector<double> xs, std::vector<double> ys) {
  std::vector<double> grid = xs;
  grid.insert(grid.end(), ys.begin(), ys.end());
  std::sort(grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double t = grid[i];
    const double fx = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin()) /
                      static_cast<double>(xs.size());
    const double fy = static_cast<double>(std::upper_bound(ys.begin(), ys.end(), t) - ys.begin()) /
                      static_cast<double>(ys.size());
    total += std::abs(fx - fy) * (grid[i + 1] - grid[i]);
  }
  return total;
}

TEST(WassersteinTest, UnequalLengthsMatchCdfIntegral) {
  Rng rng(10, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs(1 + rng.uniform_int(15)), ys(1 + rng.uniform_int(15));
    for (auto& x : xs) x = rng.normal();
    for (auto& y : ys) y = 0.5 + rng.normal();
    ASSERT_NEAR(wasserstein_empirical(xs, ys, 1.0), w1_cdf_oracle(xs, ys), 1e-12);
  }
}

CategoricalDist random_dist(Rng& rng, const std::vector<double>& support) {
  return {support, random_probs(rng, static_cast<int>(support.size()), 0.5)};
}

TEST(WassersteinTest, MetricAxiomsAndMonotonicityInP) {
  Rng rng(11, 1);
  const auto support = make_support(-5.0, 5.0, 21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = random_dist(rng, support);
    const auto y = random_dist(rng, support);
    const auto w = random_dist(rng, support);
    const double p = rng.uniform(1.0, 3.0);
    const double q = p + rng.uniform(0.0, 2.0);
    const double xy = wasserstein_categorical(x, y, p);
    ASSERT_GE(xy, 0.0);
    ASSERT_NEAR(xy, wasserstein_categorical(y, x, p), 1e-9);
    ASSERT_NEAR(wasserstein_categorical(x, x, p), 0.0, 1e-12);
    ASSERT_LE(xy, wasserstein_categorical(x, w, p) + wasserstein_categorical(w, y, p) + 1e-9);
    ASSERT_LE(xy, wasserstein_categorical(x, y, q) + 1e-9);
    ASSERT_LE(wasserstein_categorical(x, y, 1.0), wasserstein_categorical(x, y, 2.0) + 1e-9);
  }
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> a(1 + rng.uniform_int(9)), b(1 + rng.uniform_int(9)),
        c(1 + rng.uniform_int(9));
    for (auto* v : {&a, &b, &c}) {
      for (double& e : *v) e = rng.normal();
    }
    const double ab = wasserstein_empirical(a, b, 1.5);
    ASSERT_GE(ab, 0.0);
    ASSERT_NEAR(ab, wasserstein_empirical(b, a, 1.5), 1e-9);
    ASSERT_LE(ab, wasserstein_empirical(a, c, 1.5) + wasserstein_empirical(c, b, 1.5) + 1e-9);
    ASSERT_LE(wasserstein_empirical(a, b, 1.0), wasserstein_empirical(a, b, 2.0) + 1e-9);
  }
}

TEST(WassersteinTest, Errors) {
  const std::vector<double> a{1.0};
  const std::vector<double> empty;
  EXPECT_THROW(wasserstein_empirical(a, a, 0.5), std::invalid_argument);
  EXPECT_THROW(wasserstein_empirical(a, empty, 1.0), std::invalid_argument);
  CategoricalDist bad{{0.0, 1.0}, {0.5, 0.6}};
  EXPECT_THROW(wasserstein_categorical(bad, bad, 1.0), std::invalid_argument);
  ValueDistTable z1(make_support(0.0, 1.0, 3), 2, 2);
  ValueDistTable z2(make_support(0.0, 1.0, 3), 2, 3);
  EXPECT_THROW(wasserstein_max(z1, z2, 1.0), std::invalid_argument);
}

TEST(WassersteinTest, MaxOverCells) {
  const auto support = make_support(0.0, 4.0, 5);
  ValueDistTable z1(support, 3, 2);
  ValueDistTable z2 = z1;
  EXPECT_EQ(wasserstein_max(z1, z2, 1.0), 0.0);
  z2.set(2, 1, CategoricalDist::dirac_on(support, 3.0));
  EXPECT_DOUBLE_EQ(wasserstein_max(z1, z2, 1.0), 3.0);
}

TEST(MonteCarloTest, TwoStateAlwaysStayIsFiniteGeometricSum) {
  auto env = build_env(EnvSpec::preset(EnvKind::kTwoState), 0);
  Rng rng(12, 1);
  const auto returns = monte_carlo_returns(*env, table_policy(always(2, 2, 0)), 0, 0, 20, rng);
  const double expected = 20.0 * (1.0 - std::pow(0.95, 25)) / (1.0 - 0.95);
  for (double g : returns) EXPECT_NEAR(g, expected, 1e-9);
  EXPECT_NEAR(expected, 289.0442, 1e-4);
}

TEST(MonteCarloTest, MeanMatchesExactQOnRandomMdps) {
  Rng rng(13, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const TabularMdp mdp = random_mdp(rng, 5, 2, 0.8);
    const PolicyTable pi = random_policy(rng, 5, 2);
    const QTable q = q_from_v(mdp, solve_value_exact(mdp, pi), mdp.gamma);
    TabularEnv env(mdp, 10, 1, "random");
    const int horizon = effective_horizon(mdp.gamma, 1e-8);
    const int s = static_cast<int>(rng.uniform_int(5));
    const int a = static_cast<int>(rng.uniform_int(2));
    const auto returns = monte_carlo_returns(env, table_policy(pi), s, a, 4000, rng, horizon);
    double mean = 0.0;
    for (double g : returns) mean += g;
    mean /= static_cast<double>(returns.size());
    double var = 0.0;
    for (double g : returns) var += (g - mean) * (g - mean);
    var /= static_cast<double>(returns.size() - 1);
    EXPECT_NEAR(mean, q(s, a), 3.0 * std::sqrt(var / returns.size()) + 1e-6);
  }
}

TEST(MonteCarloTest, DeterministicMdpGivesIdenticalSamples) {
  auto env = build_env(EnvSpec::preset(EnvKind::kGridworld), 0);
  Rng rng(14, 1);
  const auto returns =
      monte_carlo_returns(*env, table_policy(always(16, 4, 3)), 0, 1, 10, rng);
  for (double g : returns) EXPECT_EQ(g, returns.front());
  EXPECT_THROW(monte_carlo_returns(*env, table_policy(always(16, 4, 3)), 0, 1, 0, rng),
               std::invalid_argument);
  auto cart = build_env(EnvSpec::preset(EnvKind::kCartPole), 0);
  EXPECT_THROW(monte_carlo_returns(*cart, table_policy(always(1, 2, 0)), 0, 0, 1, rng),
               std::logic_error);
}

TEST(MonteCarloTest, EffectiveHorizon) {
  EXPECT_EQ(effective_horizon(0.0), 1);
  const int h = effective_horizon(0.9, 1e-3);
  EXPECT_LT(std::pow(0.9, h), 1e-3);
  EXPECT_GE(std::pow(0.9, h - 1), 1e-3);
}

TEST(BanditTest, QuadraticDiracEquilibrium) {
  EXPECT_NEAR(quadratic_dirac_equilibrium(std::vector<double>{0.0, 1.0}), 0.7071068, 1e-6);
  EXPECT_DOUBLE_EQ(quadratic_dirac_equilibrium(std::vector<double>{0.51, 0.51}), 0.51);
  EXPECT_EQ(quadratic_dirac_equilibrium(std::vector<double>{0.0, 0.0, 0.0}), 0.0);
  EXPECT_THROW(quadratic_dirac_equilibrium(std::vector<double>{}), std::invalid_argument);
}

// The equilibrium must make the critic's payoff m (g^2 - E x^2) flat in m;
// check with a brute-force scan of g for which the slope vanishes.
TEST(BanditTest, EquilibriumZeroesCriticGradient) {
  Rng rng(15, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xs(1 + rng.uniform_int(10));
    for (double& x : xs) x = rng.uniform(0.0, 3.0);
    double second = 0.0;
    for (double x : xs) second += x * x;
    second /= static_cast<double>(xs.size());
    const double g = quadratic_dirac_equilibrium(xs);
    EXPECT_NEAR(g * g - second, 0.0, 1e-12);
    EXPECT_GE(g, 0.0);
  }
}

TEST(BanditTest, MisorderingRange) {
  const auto small = bandit_misordering_demo(0.01);
  EXPECT_TRUE(small.misordered);
  EXPECT_TRUE(small.truth_prefers_a);
  EXPECT_FALSE(small.equilibrium_prefers_a);
  EXPECT_NEAR(small.equilibrium_b, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(small.equilibrium_a, 0.51);

  const auto large = bandit_misordering_demo(0.3);
  EXPECT_FALSE(large.misordered);
  EXPECT_EQ(large.verdict, "no misordering");

  const double boundary = 1.0 / std::sqrt(2.0) - 0.5;
  const auto edge = bandit_misordering_demo(boundary);
  EXPECT_NEAR(edge.equilibrium_a, edge.equilibrium_b, 1e-12);
  EXPECT_FALSE(edge.misordered);
}

}  // namespace
}  // namespace ganq
