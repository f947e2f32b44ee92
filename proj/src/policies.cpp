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

#include "apom/policies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "apom/errors.hpp"

namespace apom {
namespace {

constexpr double kEnergySlack = 1e-9;
constexpr double kEfficiencyTolerance = 1e-9;

}  // namespace

Decision greedy_decide(const PolicyState& state, const UserDemand& demand) {
  return {state.available_energy >= demand.weight, std::nullopt};
}

Decision conservative_decide(const PolicyState& state, const UserDemand& demand,
                             double best_efficiency) {
  const bool best = std::abs(demand.efficiency() - best_efficiency) <= kEfficiencyTolerance;
  return {best && state.available_energy >= demand.weight, best_efficiency};
}

double expected_threshold(std::int64_t slot, std::int64_t horizon, std::size_t type_index,
                          const UserTypeSet& types, double q, HorizonFactor factor) {
  const auto remaining = static_cast<double>(
      factor == HorizonFactor::kRemainingInclusive ? horizon - slot + 1 : horizon - slot);
  double better_demand = 0.0;
  for (std::size_t k = type_index + 1; k < types.size(); ++k) {
    better_demand += types[k].probability * types[k].demand.weight;
  }
  return remaining * (better_demand - q);
}

Decision expected_threshold_decide(const PolicyState& state, std::size_t type_index,
                                   const UserTypeSet& types, double q,
                                   HorizonFactor factor) {
  if (type_index >= types.size()) throw ContractError("type index outside the type set");
  const double eta =
      expected_threshold(state.slot, state.horizon, type_index, types, q, factor);
  // Negative cutoffs clamp to the user's own weight.
  const double cutoff = std::max(eta, types[type_index].demand.weight);
  return {state.available_energy >= cutoff, cutoff};
}

Decision dp_policy_decide(const PolicyState& state, std::size_t type_index,
                          const ThresholdTable& thresholds) {
  const double e = state.available_energy;
  if (state.slot < 1 || state.slot > thresholds.n_slots() ||
      type_index >= thresholds.n_types() || e < 0.0 ||
      e > static_cast<double>(thresholds.energy_cap()) || std::floor(e) != e) {
    std::ostringstream msg;
    msg << "state (slot=" << state.slot << ", energy=" << e << ", type=" << type_index
        << ") outside the threshold table";
    throw ContractError(msg.str());
  }
  const auto eta = thresholds.at(state.slot, type_index);
  return {e >= static_cast<double>(eta), static_cast<double>(eta)};
}

Decision GreedyPolicy::decide(const Observation& obs) const {
  return greedy_decide(obs.state, obs.demand);
}

Decision ConservativePolicy::decide(const Observation& obs) const {
  return conservative_decide(obs.state, obs.demand, best_);
}

Decision ExpectedThresholdPolicy::decide(const Observation& obs) const {
  if (obs.type_index < 0) throw ContractError("expected-threshold needs typed users");
  return expected_threshold_decide(obs.state, static_cast<std::size_t>(obs.type_index),
                                   types_, q_, factor_);
}

Decision DpThresholdPolicy::decide(const Observation& obs) const {
  if (obs.type_index < 0) throw ContractError("dp policy needs typed users");
  return dp_policy_decide(obs.state, static_cast<std::size_t>(obs.type_index),
                          *thresholds_);
}

Decision ReplayPolicy::decide(const Observation& obs) const {
  const auto s = static_cast<std::size_t>(obs.state.slot - 1);
  if (s >= selection_.size()) throw ContractError("replay selection shorter than horizon");
  return {selection_[s], std::nullopt};
}

EpisodeResult run_episode(const EpisodeInstance& instance, const Policy& policy,
                          const RunOptions& options) {
  const auto arrivals = instance.schedule.arrivals();
  const double total_harvest = instance.schedule.total();
  EpisodeResult result;
  if (options.record_trace) result.trace.reserve(instance.users.size());
  if (options.record_cumulative) result.cumulative_value.reserve(instance.users.size());

  double energy = 0.0;
  double used = 0.0;
  double harvested = 0.0;
  std::size_t next = 0;
  HarvestWindow window;
  const bool typed = !instance.type_indices.empty();

  for (std::int64_t s = 0; s < instance.horizon; ++s) {
    bool new_interval = false;
    while (next < arrivals.size() && arrivals[next].slot <= s) {
      energy = std::min(energy + arrivals[next].amount, options.battery_cap);
      harvested += arrivals[next].amount;
      window.interval_start = arrivals[next].slot;
      ++next;
      new_interval = true;
    }
    if (new_interval) {
      window.available_at_start = energy;
      window.consumed_since_start = 0.0;
    }
    window.next_harvest = next < arrivals.size() ? arrivals[next].slot : instance.horizon;

    const auto& user = instance.users[static_cast<std::size_t>(s)];
    Observation obs;
    obs.state = {s + 1, energy, instance.horizon};
    obs.demand = user;
    obs.type_index = typed ? instance.type_indices[static_cast<std::size_t>(s)] : -1;
    obs.used_energy = used;
    obs.harvested_so_far = harvested;
    obs.total_harvest = total_harvest;
    obs.window = window;

    const Decision d = policy.decide(obs);
    if (d.serve) {
      if (user.weight > energy + kEnergySlack) {
        std::ostringstream msg;
        msg << policy.name() << " served slot " << s + 1 << " (weight " << user.weight
            << ") with only " << energy << " energy available";
        throw ContractError(msg.str());
      }
      energy = std::max(0.0, energy - user.weight);
      used += user.weight;
      window.consumed_since_start += user.weight;
      result.total_value += user.value;
      result.total_weight += user.weight;
    }
    if (options.record_trace) {
      result.trace.push_back({s + 1, obs.type_index, user, obs.state.available_energy,
                              d.serve, d.serve ? user.value : 0.0, d.threshold});
    }
    if (options.record_cumulative) result.cumulative_value.push_back(result.total_value);
  }
  return result;
}

bool trace_consistent(const EpisodeInstance& instance, const EpisodeResult& result) {
  if (result.trace.size() != instance.users.size()) return false;
  double used = 0.0;
  double value = 0.0;
  for (const auto& rec : result.trace) {
    if (rec.served) {
      used += rec.demand.weight;
      value += rec.demand.value;
      if (used > instance.schedule.harvested_through(rec.slot - 1) + kEnergySlack) {
        return false;
      }
    }
  }
  return std::abs(value - result.total_value) <= 1e-9 * std::max(1.0, std::abs(value));
}

}  // namespace apom
