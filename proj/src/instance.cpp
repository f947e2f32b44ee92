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

#include "apom/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "apom/errors.hpp"

namespace apom {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kProbabilityTolerance = 1e-9;

}  // namespace

void validate(const UserDemand& demand) {
  if (!(demand.value > 0.0) || !(demand.weight > 0.0) ||
      !std::isfinite(demand.efficiency())) {
    std::ostringstream msg;
    msg << "invalid user demand (value=" << demand.value
        << ", weight=" << demand.weight << ")";
    throw ParameterError(msg.str());
  }
}

UserTypeSet UserTypeSet::make(std::vector<UserType> types) {
  if (types.empty()) throw ParameterError("user type set is empty");
  double sum = 0.0;
  for (const auto& t : types) {
    validate(t.demand);
    if (!(t.probability >= 0.0 && t.probability <= 1.0)) {
      throw ParameterError("type probability outside [0,1]");
    }
    sum += t.probability;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    std::ostringstream msg;
    msg << "type probabilities sum to " << sum << ", expected 1";
    throw ParameterError(msg.str());
  }
  std::stable_sort(types.begin(), types.end(),
                   [](const UserType& a, const UserType& b) {
                     return a.demand.efficiency() < b.demand.efficiency();
                   });
  UserTypeSet set;
  set.types_ = std::move(types);
  return set;
}

std::vector<double> UserTypeSet::probabilities() const {
  std::vector<double> p;
  p.reserve(types_.size());
  for (const auto& t : types_) p.push_back(t.probability);
  return p;
}

double UserTypeSet::best_efficiency() const {
  return types_.empty() ? 0.0 : types_.back().demand.efficiency();
}

bool UserTypeSet::unit_weights() const {
  return std::all_of(types_.begin(), types_.end(),
                     [](const UserType& t) { return t.demand.weight == 1.0; });
}

bool UserTypeSet::integer_weights() const {
  return std::all_of(types_.begin(), types_.end(), [](const UserType& t) {
    return t.demand.weight >= 1.0 && std::floor(t.demand.weight) == t.demand.weight;
  });
}

EnergyArrivalSchedule::EnergyArrivalSchedule(std::vector<EnergyArrival> arrivals)
    : arrivals_(std::move(arrivals)) {
  if (arrivals_.empty() || arrivals_.front().slot != 0) {
    throw ParameterError("energy schedule must start with an arrival at slot 0");
  }
  for (std::size_t j = 0; j < arrivals_.size(); ++j) {
    if (!(arrivals_[j].amount >= 0.0) || !std::isfinite(arrivals_[j].amount)) {
      throw ParameterError("energy arrival amounts must be finite and >= 0");
    }
    if (j > 0 && arrivals_[j].slot <= arrivals_[j - 1].slot) {
      throw ParameterError("energy arrival slots must be strictly increasing");
    }
  }
}

double EnergyArrivalSchedule::total() const {
  double sum = 0.0;
  for (const auto& a : arrivals_) sum += a.amount;
  return sum;
}

double EnergyArrivalSchedule::harvested_through(std::int64_t slot) const {
  double sum = 0.0;
  for (const auto& a : arrivals_) {
    if (a.slot > slot) break;
    sum += a.amount;
  }
  return sum;
}

EnergyArrivalSchedule even_schedule(std::int64_t horizon, double total,
                                    std::size_t count,
                                    std::span<const double> amounts) {
  if (count == 0) throw ParameterError("at least one harvest is required");
  if (!amounts.empty() && amounts.size() != count) {
    throw ParameterError("harvest amount list length differs from harvest count");
  }
  if (count > 1 && horizon < static_cast<std::int64_t>(count)) {
    throw ParameterError("more harvests than slots in the horizon");
  }
  std::vector<EnergyArrival> arrivals;
  arrivals.reserve(count);
  const auto n = static_cast<std::int64_t>(count);
  for (std::int64_t j = 0; j < n; ++j) {
    double amount = 0.0;
    if (!amounts.empty()) {
      amount = amounts[static_cast<std::size_t>(j)];
    } else {
      // Integer totals split into integer parts; the remainder goes first.
      const double base = std::floor(total / static_cast<double>(n));
      const double rem = total - base * static_cast<double>(n);
      amount = base + (static_cast<double>(j) < rem ? 1.0 : 0.0);
      if (std::floor(total) != total) amount = total / static_cast<double>(n);
    }
    arrivals.push_back({j * horizon / n, amount});
  }
  return EnergyArrivalSchedule(std::move(arrivals));
}

void validate(const EpisodeInstance& instance) {
  if (instance.horizon < 0 ||
      static_cast<std::int64_t>(instance.users.size()) != instance.horizon) {
    throw ParameterError("instance user count differs from its horizon");
  }
  for (const auto& u : instance.users) validate(u);
  const auto arrivals = instance.schedule.arrivals();
  if (arrivals.empty()) throw ParameterError("instance has no energy schedule");
  if (arrivals.back().slot > instance.horizon) {
    throw ParameterError("energy arrival scheduled past the horizon");
  }
  if (!instance.type_indices.empty() &&
      instance.type_indices.size() != instance.users.size()) {
    throw ParameterError("type index list length differs from user count");
  }
}

std::mt19937_64 RandomSource::engine() const {
  return std::mt19937_64(splitmix64(seed_));
}

RandomSource RandomSource::derive(std::uint64_t stream) const {
  return RandomSource(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

EpisodeInstance generate_deterministic_instance(
    std::int64_t n_users, EfficiencyRange efficiency,
    std::pair<double, double> weight_range, EnergyArrivalSchedule schedule,
    const RandomSource& rng, double weight_quantum) {
  if (n_users < 0) throw ParameterError("n_users must be >= 0");
  if (!(efficiency.lower > 0.0) || efficiency.lower > efficiency.upper ||
      !std::isfinite(efficiency.upper)) {
    throw ParameterError("efficiency bounds must satisfy 0 < L <= U");
  }
  const auto [w_lo, w_hi] = weight_range;
  if (!(w_lo > 0.0) || w_lo > w_hi || !std::isfinite(w_hi)) {
    throw ParameterError("weight range must be positive and ordered");
  }
  if (weight_quantum < 0.0) throw ParameterError("weight quantum must be >= 0");

  auto gen = rng.engine();
  std::uniform_real_distribution<double> eff_dist(efficiency.lower, efficiency.upper);
  std::uniform_real_distribution<double> w_dist(w_lo, w_hi);
  const auto grid_steps =
      weight_quantum > 0.0
          ? static_cast<std::int64_t>(std::floor((w_hi - w_lo) / weight_quantum + 1e-9))
          : 0;
  std::uniform_int_distribution<std::int64_t> grid_dist(0, grid_steps);

  EpisodeInstance instance;
  instance.horizon = n_users;
  instance.users.reserve(static_cast<std::size_t>(n_users));
  for (std::int64_t i = 0; i < n_users; ++i) {
    // Clamp guards the half-open upper end of uniform_real_distribution.
    const double eff = std::clamp(eff_dist(gen), efficiency.lower, efficiency.upper);
    const double weight = weight_quantum > 0.0
                              ? w_lo + weight_quantum * static_cast<double>(grid_dist(gen))
                              : w_dist(gen);
    instance.users.push_back({eff * weight, weight});
  }
  instance.schedule = std::move(schedule);
  validate(instance);
  return instance;
}

EpisodeInstance sample_stochastic_episode(const UserTypeSet& types,
                                          StochasticEnergyModel energy,
                                          std::int64_t n_slots, std::int64_t e0,
                                          const RandomSource& rng) {
  if (types.empty()) throw ParameterError("user type set is empty");
  double sum = 0.0;
  for (const auto& t : types.types()) sum += t.probability;
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw ParameterError("type probabilities must sum to 1");
  }
  if (!(energy.q >= 0.0 && energy.q <= 1.0)) {
    throw ParameterError("harvest probability q must lie in [0,1]");
  }
  if (n_slots < 0 || e0 < 0) throw ParameterError("n_slots and e0 must be >= 0");

  auto gen = rng.engine();
  const auto probs = types.probabilities();
  std::discrete_distribution<int> type_dist(probs.begin(), probs.end());
  std::bernoulli_distribution harvest(energy.q);

  EpisodeInstance ep;
  ep.horizon = n_slots;
  ep.users.reserve(static_cast<std::size_t>(n_slots));
  ep.type_indices.reserve(static_cast<std::size_t>(n_slots));
  for (std::int64_t n = 0; n < n_slots; ++n) {
    const int k = type_dist(gen);
    ep.type_indices.push_back(k);
    ep.users.push_back(types[static_cast<std::size_t>(k)].demand);
  }
  // The harvest after the decision at 0-based slot s lands at slot s + 1.
  std::vector<EnergyArrival> arrivals{{0, static_cast<double>(e0)}};
  for (std::int64_t s = 0; s < n_slots; ++s) {
    if (harvest(gen)) arrivals.push_back({s + 1, 1.0});
  }
  ep.schedule = EnergyArrivalSchedule(std::move(arrivals));
  return ep;
}

}  // namespace apom
