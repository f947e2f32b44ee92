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

#ifndef APOM_EVALUATION_HPP_
#define APOM_EVALUATION_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apom/execution.hpp"
#include "apom/fuzzy_engine.hpp"
#include "apom/ga_optimizer.hpp"
#include "apom/instance.hpp"
#include "apom/offline_solver.hpp"
#include "apom/policies.hpp"
#include "apom/stochastic_dp.hpp"
#include "apom/threshold_engines.hpp"

namespace apom {

// What a named policy may need; unused fields are ignored.
struct PolicyContext {
  EfficiencyBounds bounds{6.0, 10.0};
  std::optional<Chromosome> chromosome;
  FuzzySystem fuzzy = FuzzySystem::defaults();
  std::optional<UserTypeSet> types;
  double q = 0.0;
  HorizonFactor horizon_factor = HorizonFactor::kRemainingInclusive;
  std::shared_ptr<const ThresholdTable> thresholds;
  std::optional<double> best_efficiency;
};

// greedy | conservative | expected-threshold | dp | monotone | jumping | ga |
// fuzzy. ("offline-replay" is built per trial by the campaign runner.)
std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyContext& context);

struct GeneratorParams {
  std::int64_t n_users = 1000;
  EfficiencyRange efficiency{6.0, 10.0};
  std::pair<double, double> weight_range{1.0, 10.0};
  double weight_quantum = 1.0;
  EnergyArrivalSchedule schedule = even_schedule(1000, 2000.0, 1);
};

EpisodeInstance generate(const GeneratorParams& params, const RandomSource& rng);

struct CampaignConfig {
  std::vector<std::string> policies;
  GeneratorParams generator;
  // When nonempty, trial t uses fixed_instances[t % size] instead of generating.
  std::vector<EpisodeInstance> fixed_instances;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  OfflineOptions offline;
  PolicyContext context;
};

struct TrialRow {
  std::int64_t trial = 0;
  std::string policy;
  double alg_value = 0.0;
  double opt_value = 0.0;
  double ratio = 1.0;
};

struct PolicySummary {
  std::string policy;
  std::int64_t valid_trials = 0;
  std::int64_t invalid_trials = 0;
  double average_total_value = 0.0;
  double worst_total_value = 0.0;
  double best_total_value = 0.0;
  double average_ratio = 1.0;
  double worst_ratio = 1.0;
  double best_ratio = 1.0;
};

struct BoundChecks {
  std::int64_t ratio_below_one = 0;  // ALG > OPT: must stay zero
  double monotone_bound = 0.0;       // ln(U/L) + 1
  std::int64_t monotone_bound_exceeded = 0;
};

struct EvaluationReport {
  PolicySummary offline;  // OPT totals; ratios are 1 by definition
  std::vector<PolicySummary> policies;
  std::vector<TrialRow> rows;  // ordered by (trial, policy list order)
  BoundChecks bounds;
  std::vector<std::string> failures;  // one message per invalid (trial, policy)

  const PolicySummary& summary(const std::string& policy) const;
};

// Runs every policy on every trial instance and compares with the offline
// optimum. Trials are independent; aggregation follows trial order so both
// execution modes return identical reports.
EvaluationReport run_campaign(const CampaignConfig& config,
                              Execution execution = Execution::kParallel);

// Two-type upper bound on the expected total value. Type 1 is the MORE
// efficient type here (v1/w1 >= v2/w2).
struct UpperBoundResult {
  enum class Regime { kHarvestLimited, kDemandLimited };
  Regime regime = Regime::kHarvestLimited;
  double bound = 0.0;
};

UpperBoundResult two_type_upper_bound(double v1, double w1, double v2, double w2,
                                      double p1, double q, std::int64_t n_slots);

struct StochasticCampaign {
  DpConfig dp;
  std::int64_t e0 = 0;
  std::int64_t episodes = 10000;
  std::uint64_t seed = 0;
  std::vector<std::string> policies{"dp", "expected-threshold", "greedy", "conservative"};
  HorizonFactor horizon_factor = HorizonFactor::kRemainingInclusive;
  bool record_trajectories = false;
};

struct StochasticSummary {
  std::string policy;
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> mean_trajectory;  // mean cumulative value after each slot
};

struct StochasticReport {
  double dp_expected_value = 0.0;  // sum_k p(k) V*[1][e0][k]
  std::int64_t episodes = 0;
  std::vector<StochasticSummary> policies;
  std::optional<UpperBoundResult> two_type_bound;

  const StochasticSummary& summary(const std::string& policy) const;
};

// Simulates the policies on shared sampled episodes (common random numbers).
StochasticReport stochastic_comparison(const StochasticCampaign& campaign,
                                       Execution execution = Execution::kParallel);

// First-interval regime for two-harvest instances: the monotone engine, run as if
// all energy were present from slot 0, consumes no more than B0 before the
// second harvest, so the real run never hits the energy constraint early.
bool satisfies_first_interval_precondition(const EpisodeInstance& instance,
                                           const EfficiencyBounds& bounds);

}  // namespace apom

#endif  // APOM_EVALUATION_HPP_
