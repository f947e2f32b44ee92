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

#ifndef APOM_TESTS_TEST_SUPPORT_HPP_
#define APOM_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "apom/instance.hpp"
#include "apom/stochastic_dp.hpp"

namespace apom::testing {

inline EpisodeInstance make_instance(const std::vector<std::pair<double, double>>& users,
                                     const std::vector<std::pair<std::int64_t, double>>& arrivals) {
  EpisodeInstance inst;
  inst.horizon = static_cast<std::int64_t>(users.size());
  for (const auto& [v, w] : users) inst.users.push_back({v, w});
  std::vector<EnergyArrival> list;
  for (const auto& [slot, amount] : arrivals) list.push_back({slot, amount});
  inst.schedule = EnergyArrivalSchedule(std::move(list));
  return inst;
}

// Integer weights 1..5, integer values 1..20, up to `harvests` arrivals.
inline EpisodeInstance random_small_instance(const RandomSource& rng, std::int64_t n,
                                             std::size_t harvests) {
  auto eng = rng.engine();
  std::uniform_int_distribution<int> weight(1, 5), value(1, 20), amount(0, 8);
  std::vector<std::pair<double, double>> users;
  for (std::int64_t i = 0; i < n; ++i) users.emplace_back(value(eng), weight(eng));
  std::vector<std::int64_t> slots{0};
  std::uniform_int_distribution<std::int64_t> slot(1, std::max<std::int64_t>(n, 1));
  // Slots 1..n are the only other legal arrival slots.
  while (slots.size() < harvests && static_cast<std::int64_t>(slots.size()) <= n) {
    const auto s = slot(eng);
    if (std::find(slots.begin(), slots.end(), s) == slots.end()) slots.push_back(s);
  }
  std::sort(slots.begin(), slots.end());
  std::vector<std::pair<std::int64_t, double>> arrivals;
  for (auto s : slots) arrivals.emplace_back(s, amount(eng));
  return make_instance(users, arrivals);
}

inline DpConfig make_config(std::int64_t n, const std::vector<UserType>& types, double q,
                            std::int64_t cap) {
  DpConfig c;
  c.n_slots = n;
  c.types = UserTypeSet::make(types);
  c.q = q;
  c.energy_cap = cap;
  return c;
}

// Unit-weight random config with K types, N slots and cap E.
inline DpConfig random_unit_config(std::mt19937_64& eng, std::int64_t n, std::size_t k,
                                   std::int64_t cap) {
  std::uniform_real_distribution<double> value(0.5, 10.0), prob(0.05, 1.0), q(0.0, 1.0);
  std::vector<double> p(k);
  double sum = 0.0;
  for (auto& x : p) sum += (x = prob(eng));
  std::vector<UserType> types;
  for (std::size_t i = 0; i < k; ++i) types.push_back({{value(eng), 1.0}, p[i] / sum});
  // Renormalise the last entry so the sum is 1 to machine precision.
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) head += types[i].probability;
  types.back().probability = 1.0 - head;
  return make_config(n, types, q(eng), cap);
}

}  // namespace apom::testing

#endif  // APOM_TESTS_TEST_SUPPORT_HPP_
