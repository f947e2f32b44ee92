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

#ifndef APOM_PRESETS_HPP_
#define APOM_PRESETS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "apom/evaluation.hpp"
#include "apom/ga_optimizer.hpp"

namespace apom {

// Named experiment scenarios. table1/table2 are deterministic campaigns
// against the offline optimum; fig4..fig7 are stochastic DP comparisons.
std::vector<std::string> preset_names();
bool is_stochastic_preset(const std::string& name);

struct DeterministicPreset {
  GeneratorParams generator;
  EfficiencyBounds bounds{6.0, 10.0};
  std::vector<std::string> policies;
  std::int64_t trials = 1000;
};

struct StochasticPreset {
  DpConfig dp;
  std::int64_t e0 = 0;
  std::int64_t episodes = 10000;
};

// Throw ParameterError for unknown names or the wrong preset kind.
DeterministicPreset deterministic_preset(const std::string& name);
StochasticPreset stochastic_preset(const std::string& name);

// GA settings used by campaigns that include the "ga" policy.
GaConfig campaign_ga_config(const EfficiencyBounds& bounds, std::uint64_t seed);
inline constexpr std::size_t kCampaignTrainingInstances = 32;

// Training instances come from a stream disjoint from every trial stream
// RandomSource(seed).derive(t), so the GA never sees an evaluation instance.
std::vector<EpisodeInstance> training_instances(const GeneratorParams& params,
                                                std::size_t count, std::uint64_t seed);

GaResult train_chromosome(const GeneratorParams& params, const GaConfig& config,
                          std::size_t pool_size, const OfflineOptions& offline,
                          Execution execution = Execution::kParallel);

}  // namespace apom

#endif  // APOM_PRESETS_HPP_
