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

#ifndef APOM_POLICIES_HPP_
#define APOM_POLICIES_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apom/instance.hpp"
#include "apom/stochastic_dp.hpp"

namespace apom {

// slot is 1-based (1..horizon); available_energy is the battery level e_n
// before the decision.
struct PolicyState {
  std::int64_t slot = 1;
  double available_energy = 0.0;
  std::int64_t horizon = 0;
};

struct Decision {
  bool serve = false;
  // The cutoff the policy compared against, when it has one.
  std::optional<double> threshold;
};

// Harvest-interval bookkeeping for the interval containing the current slot.
// Slots here are 0-based schedule slots.
struct HarvestWindow {
  std::int64_t interval_start = 0;
  std::int64_t next_harvest = 0;  // horizon when no further harvest
  double available_at_start = 0.0;
  double consumed_since_start = 0.0;
};

// Everything the episode runner exposes to a policy for one decision.
struct Observation {
  PolicyState state;
  UserDemand demand;
  int type_index = -1;
  double used_energy = 0.0;       // consumed before this decision
  double harvested_so_far = 0.0;  // credited at or before this slot
  double total_harvest = 0.0;     // whole schedule; monotone foresight only
  HarvestWindow window;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Decision decide(const Observation& obs) const = 0;
};

// Serve iff e_n >= w_n.
Decision greedy_decide(const PolicyState& state, const UserDemand& demand);

// Serve iff v/w equals the best efficiency (within 1e-9) and e_n >= w_n.
Decision conservative_decide(const PolicyState& state, const UserDemand& demand,
                             double best_efficiency);

enum class HorizonFactor {
  kRemainingInclusive,  // N - n + 1, the displayed closed form
  kRemainingExclusive,  // N - n, the slot count of the IID expansion
};

// eta_n(k) = H * (sum_{k'>k} p(k') w(k') - q), H per `factor`.
double expected_threshold(std::int64_t slot, std::int64_t horizon, std::size_t type_index,
                          const UserTypeSet& types, double q,
                          HorizonFactor factor = HorizonFactor::kRemainingInclusive);

// Serve iff e_n >= eta_n(k) and e_n >= w(k).
Decision expected_threshold_decide(const PolicyState& state, std::size_t type_index,
                                   const UserTypeSet& types, double q,
                                   HorizonFactor factor = HorizonFactor::kRemainingInclusive);

// Serve iff e_n >= eta[n][k]. Throws ContractError for states outside the table.
Decision dp_policy_decide(const PolicyState& state, std::size_t type_index,
                          const ThresholdTable& thresholds);

class GreedyPolicy final : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  Decision decide(const Observation& obs) const override;
};

class ConservativePolicy final : public Policy {
 public:
  explicit ConservativePolicy(double best_efficiency) : best_(best_efficiency) {}
  std::string name() const override { return "conservative"; }
  Decision decide(const Observation& obs) const override;

 private:
  double best_;
};

class ExpectedThresholdPolicy final : public Policy {
 public:
  ExpectedThresholdPolicy(UserTypeSet types, double q,
                          HorizonFactor factor = HorizonFactor::kRemainingInclusive)
      : types_(std::move(types)), q_(q), factor_(factor) {}
  std::string name() const override { return "expected-threshold"; }
  Decision decide(const Observation& obs) const override;

 private:
  UserTypeSet types_;
  double q_;
  HorizonFactor factor_;
};

class DpThresholdPolicy final : public Policy {
 public:
  explicit DpThresholdPolicy(std::shared_ptr<const ThresholdTable> thresholds)
      : thresholds_(std::move(thresholds)) {}
  std::string name() const override { return "dp"; }
  Decision decide(const Observation& obs) const override;

 private:
  std::shared_ptr<const ThresholdTable> thresholds_;
};

// Serves exactly a precomputed selection (e.g. the offline optimum).
class ReplayPolicy final : public Policy {
 public:
  explicit ReplayPolicy(std::vector<bool> selection) : selection_(std::move(selection)) {}
  std::string name() const override { return "offline-replay"; }
  Decision decide(const Observation& obs) const override;

 private:
  std::vector<bool> selection_;
};

struct TraceRecord {
  std::int64_t slot = 0;  // 1-based
  int type_index = -1;
  UserDemand demand;
  double energy_before = 0.0;
  bool served = false;
  double value_accrued = 0.0;
  std::optional<double> threshold;
};

struct RunOptions {
  double battery_cap = std::numeric_limits<double>::infinity();
  bool record_trace = false;
  bool record_cumulative = false;
};

struct EpisodeResult {
  double total_value = 0.0;
  double total_weight = 0.0;
  std::vector<TraceRecord> trace;
  std::vector<double> cumulative_value;  // after each slot
};

// Runs `policy` over `instance`. Arrivals at slot s are credited (clipped at
// battery_cap) before user s decides. Throws ContractError if the policy
// serves a user it cannot afford.
EpisodeResult run_episode(const EpisodeInstance& instance, const Policy& policy,
                          const RunOptions& options = {});

// Prefix energy causality and total = sum of served values.
bool trace_consistent(const EpisodeInstance& instance, const EpisodeResult& result);

}  // namespace apom

#endif  // APOM_POLICIES_HPP_
