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

#include "apom/presets.hpp"

#include "apom/errors.hpp"

namespace apom {
namespace {

constexpr std::uint64_t kTrainingStream = 0x7472'6169'6e00'0000ULL;

// Ten harvests of 2000 total, peaking mid-horizon like a daylight profile.
EnergyArrivalSchedule daylight_schedule() {
  const std::vector<double> amounts{80, 150, 220, 290, 330, 310, 250, 180, 120, 70};
  return even_schedule(1000, 2000.0, amounts.size(), amounts);
}

UserTypeSet unit_types(const std::vector<std::pair<double, double>>& value_prob) {
  std::vector<UserType> types;
  for (const auto& [v, p] : value_prob) types.push_back({{v, 1.0}, p});
  return UserTypeSet::make(std::move(types));
}

StochasticPreset stochastic(UserTypeSet types, double q, std::int64_t e0, std::int64_t n) {
  StochasticPreset preset;
  preset.dp.n_slots = n;
  preset.dp.types = std::move(types);
  preset.dp.q = q;
  preset.dp.energy_cap = default_energy_cap(e0, n);
  preset.e0 = e0;
  return preset;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"table1", "table2", "fig4", "fig5", "fig6", "fig7"};
}

bool is_stochastic_preset(const std::string& name) { return name.rfind("fig", 0) == 0; }

DeterministicPreset deterministic_preset(const std::string& name) {
  DeterministicPreset preset;
  preset.policies = {"monotone", "jumping", "ga", "fuzzy"};
  if (name == "table1") {
    preset.generator.schedule = daylight_schedule();
  } else if (name == "table2") {
    preset.generator.schedule = even_schedule(1000, 2000.0, 1);
  } else {
    throw ParameterError("unknown deterministic preset '" + name + "'");
  }
  preset.generator.efficiency = {preset.bounds.lower, preset.bounds.upper};
  return preset;
}

StochasticPreset stochastic_preset(const std::string& name) {
  if (name == "fig4") return stochastic(unit_types({{5, 0.3}, {10, 0.7}}), 0.5, 5, 100);
  if (name == "fig5") return stochastic(unit_types({{5, 0.7}, {10, 0.3}}), 0.5, 5, 100);
  if (name == "fig6") {
    return stochastic(unit_types({{2, 0.2}, {4, 0.2}, {6, 0.2}, {8, 0.2}, {10, 0.2}}), 0.5, 5,
                      100);
  }
  if (name == "fig7") {
    // Ratios 10/1, 5/1, 8/4, 5/8, 2/6; the sixth listed ratio has no probability.
    auto types = UserTypeSet::make({{{10, 1}, 0.3},
                                    {{5, 1}, 0.15},
                                    {{8, 4}, 0.15},
                                    {{5, 8}, 0.3},
                                    {{2, 6}, 0.1}});
    return stochastic(std::move(types), 0.5, 5, 100);
  }
  throw ParameterError("unknown stochastic preset '" + name + "'");
}

GaConfig campaign_ga_config(const EfficiencyBounds& bounds, std::uint64_t seed) {
  GaConfig config;
  config.bounds = bounds;
  config.seed = seed;
  return config;
}

std::vector<EpisodeInstance> training_instances(const GeneratorParams& params,
                                                std::size_t count, std::uint64_t seed) {
  const RandomSource stream = RandomSource(seed).derive(kTrainingStream);
  std::vector<EpisodeInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate(params, stream.derive(i)));
  return out;
}

GaResult train_chromosome(const GeneratorParams& params, const GaConfig& config,
                          std::size_t pool_size, const OfflineOptions& offline,
                          Execution execution) {
  validate(config);
  if (pool_size == 0) throw ParameterError("training pool must be nonempty");
  const TrainingPool pool =
      TrainingPool::build(training_instances(params, pool_size, config.seed), offline);
  return evolve(config, pool, execution);
}

}  // namespace apom
