// Copyright 2026 The APOM Simulator Authors
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

#include "apom/evaluation.hpp"
#include "apom/execution.hpp"
#include "apom/ga_optimizer.hpp"
#include "apom/presets.hpp"

namespace {

using apom::Execution;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial"
                                     : "parallel x" + std::to_string(apom::thread_count()));
}

void BM_Campaign(benchmark::State& state) {
  apom::CampaignConfig c;
  c.policies = {"greedy", "monotone", "jumping", "fuzzy"};
  c.generator = apom::deterministic_preset("table1").generator;
  c.trials = 16;
  c.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(apom::run_campaign(c, mode(state)));
  label(state);
}
BENCHMARK(BM_Campaign)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const auto params = apom::deterministic_preset("table1").generator;
  const auto pool = apom::TrainingPool::build(apom::training_instances(params, 8, 1));
  apom::GaConfig config;
  config.generations = 10;
  config.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(apom::evolve(config, pool, mode(state)));
  label(state);
}
BENCHMARK(BM_Evolve)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_StochasticComparison(benchmark::State& state) {
  const auto preset = apom::stochastic_preset("fig4");
  apom::StochasticCampaign c;
  c.dp = preset.dp;
  c.e0 = preset.e0;
  c.episodes = 10000;
  c.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(apom::stochastic_comparison(c, mode(state)));
  label(state);
}
BENCHMARK(BM_StochasticComparison)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
