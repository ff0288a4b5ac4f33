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

#include <benchmark/benchmark.h>

#include "ganq/deep_agents.hpp"
#include "ganq/environments.hpp"
#include "ganq/exact_solvers.hpp"
#include "ganq/neural.hpp"

namespace ganq {
namespace {

Eigen::MatrixXd random_batch(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1.0, 1.0);
  return m;
}

void BM_ForwardBackward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  Rng rng(1, 1);
  const DenseNet net = DenseNet::glorot(DenseNet::preset_sizes(20, 2, hidden), rng);
  const Eigen::MatrixXd x = random_batch(rng, 20, 32);
  const Eigen::MatrixXd up = random_batch(rng, 2, 32);
  ParamVector grad = ParamVector::Zero(net.num_params());
  for (auto _ : state) {
    DenseNet::Tape tape;
    net.forward_batch(x, &tape);
    benchmark::DoNotOptimize(net.backward(tape, up, grad));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(64)->Arg(128);

void BM_PenaltyBackward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  Rng rng(2, 1);
  const DenseNet net = DenseNet::glorot(DenseNet::preset_sizes(7, 1, hidden), rng);
  const Eigen::MatrixXd x = random_batch(rng, 7, 32);
  ParamVector grad = ParamVector::Zero(net.num_params());
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.penalty_backward_batch(x, 0, 0.1, 1.0 / 32.0, grad));
  }
}
BENCHMARK(BM_PenaltyBackward)->Arg(64)->Arg(128);

void BM_DiscriminatorLossGrad(benchmark::State& state) {
  Rng rng(3, 1);
  const GanQConfig config = GanQConfig::preset(EnvKind::kCartPole);
  GanQAgent agent(4, 2, config, 10.0, rng);
  std::vector<Transition> ts;
  for (int i = 0; i < config.batch_size; ++i) {
    Observation o;
    o.features = {rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
    ts.push_back({o, static_cast<int>(rng.uniform_int(2)), 1.0, o, false});
  }
  Batch batch;
  for (const auto& t : ts) batch.push_back(&t);
  for (auto _ : state) {
    const auto noise = DiscriminatorNoise::draw(config.noise_dim, batch.size(), rng);
    benchmark::DoNotOptimize(agent.discriminator_loss_grad(batch, noise, config.lambda));
  }
}
BENCHMARK(BM_DiscriminatorLossGrad);

void BM_DistributionalBackup(benchmark::State& state) {
  const TabularMdp mdp = gridworld_mdp();
  const auto support = support_for_mdp(mdp, 51);
  const ValueDistTable z(support, mdp.n_states, mdp.n_actions);
  const PolicyTable pi = PolicyTable::uniform(mdp.n_states, mdp.n_actions);
  for (auto _ : state) benchmark::DoNotOptimize(distributional_backup(z, mdp, pi, mdp.gamma));
}
BENCHMARK(BM_DistributionalBackup);

void BM_WassersteinEmpirical(benchmark::State& state) {
  Rng rng(4, 1);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  std::vector<double> ys(xs.size() + 1);
  for (double& x : xs) x = rng.normal();
  for (double& y : ys) y = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein_empirical(xs, ys, 1.0));
}
BENCHMARK(BM_WassersteinEmpirical)->Arg(200)->Arg(2000);

void BM_EnvStep(benchmark::State& state) {
  const auto kind = static_cast<EnvKind>(state.range(0));
  auto env = build_env(EnvSpec::preset(kind), 0);
  Rng rng(5, 1);
  env->reset();
  for (auto _ : state) {
    const auto r = env->step(static_cast<int>(rng.uniform_int(env->n_actions())));
    if (r.done()) env->reset();
  }
  state.SetLabel(std::string(env_name(kind)));
}
BENCHMARK(BM_EnvStep)
    ->Arg(static_cast<int>(EnvKind::kGridworld))
    ->Arg(static_cast<int>(EnvKind::kCartPole))
    ->Arg(static_cast<int>(EnvKind::kAcrobot));

}  // namespace
}  // namespace ganq

BENCHMARK_MAIN();
