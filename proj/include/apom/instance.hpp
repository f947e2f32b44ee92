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

#ifndef APOM_INSTANCE_HPP_
#define APOM_INSTANCE_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace apom {

// A single admission request: serving it earns `value` and costs `weight`
// units of energy.
struct UserDemand {
  double value = 0.0;
  double weight = 0.0;

  double efficiency() const { return value / weight; }

  friend bool operator==(const UserDemand&, const UserDemand&) = default;
};

// Throws ParameterError unless value > 0, weight > 0 and value/weight finite.
void validate(const UserDemand& demand);

struct UserType {
  UserDemand demand;
  double probability = 0.0;
};

// K user types ordered by nondecreasing efficiency, probabilities summing
// to one. Index 0 is the least efficient type, index K-1 the best.
class UserTypeSet {
 public:
  UserTypeSet() = default;

  // Sorts `types` by efficiency (stable) and validates them.
  static UserTypeSet make(std::vector<UserType> types);

  std::size_t size() const { return types_.size(); }
  bool empty() const { return types_.empty(); }
  const UserType& operator[](std::size_t k) const { return types_[k]; }
  std::span<const UserType> types() const { return types_; }
  std::vector<double> probabilities() const;

  double best_efficiency() const;
  bool unit_weights() const;
  bool integer_weights() const;

 private:
  std::vector<UserType> types_;
};

// Energy credited before the decision of the user at 0-based slot `slot`.
// An arrival at slot == horizon comes after the last user.
struct EnergyArrival {
  std::int64_t slot = 0;
  double amount = 0.0;

  friend bool operator==(const EnergyArrival&, const EnergyArrival&) = default;
};

class EnergyArrivalSchedule {
 public:
  EnergyArrivalSchedule() = default;
  explicit EnergyArrivalSchedule(std::vector<EnergyArrival> arrivals);

  std::span<const EnergyArrival> arrivals() const { return arrivals_; }
  std::size_t harvest_count() const { return arrivals_.size(); }
  double total() const;
  // Energy credited at slots <= `slot`.
  double harvested_through(std::int64_t slot) const;

  friend bool operator==(const EnergyArrivalSchedule&,
                         const EnergyArrivalSchedule&) = default;

 private:
  std::vector<EnergyArrival> arrivals_;
};

// `count` arrivals at evenly spaced slots 0, N/J, 2N/J, ... splitting `total`
// evenly, or using `amounts` when given (its size must equal `count`).
EnergyArrivalSchedule even_schedule(std::int64_t horizon, double total,
                                    std::size_t count,
                                    std::span<const double> amounts = {});

struct StochasticEnergyModel {
  double q = 0.0;  // per-slot probability of a unit harvest
};

struct EpisodeInstance {
  std::int64_t horizon = 0;
  std::vector<UserDemand> users;
  EnergyArrivalSchedule schedule;
  // Type index of each user for episodes sampled from a UserTypeSet; empty
  // for deterministic instances.
  std::vector<int> type_indices;

  friend bool operator==(const EpisodeInstance&, const EpisodeInstance&) = default;
};

// Throws ParameterError if users.size() != horizon or an arrival lies past
// the horizon.
void validate(const EpisodeInstance& instance);

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64 engine() const;
  // Independent child stream, a pure function of (seed, stream).
  RandomSource derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
};

struct EfficiencyRange {
  double lower = 0.0;
  double upper = 0.0;
};

// Efficiencies uniform on [L, U], weights uniform on `weight_range`. A positive
// `weight_quantum` draws weights uniformly from the grid lo, lo+quantum, ...
// so the offline solver can run at unit resolution.
EpisodeInstance generate_deterministic_instance(
    std::int64_t n_users, EfficiencyRange efficiency,
    std::pair<double, double> weight_range, EnergyArrivalSchedule schedule,
    const RandomSource& rng, double weight_quantum = 0.0);

EpisodeInstance sample_stochastic_episode(const UserTypeSet& types,
                                          StochasticEnergyModel energy,
                                          std::int64_t n_slots, std::int64_t e0,
                                          const RandomSource& rng);

}  // namespace apom

#endif  // APOM_INSTANCE_HPP_
