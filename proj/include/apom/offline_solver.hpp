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

#ifndef APOM_OFFLINE_SOLVER_HPP_
#define APOM_OFFLINE_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "apom/instance.hpp"

namespace apom {

struct OfflineSolution {
  std::vector<bool> selection;
  double total_value = 0.0;
  double total_weight_used = 0.0;
};

struct OfflineOptions {
  // Energies are multiplied by `scale` and must then be integral within 1e-6.
  std::int64_t scale = 1;
  // Upper bound on horizon * (scaled total energy + 1) table cells.
  std::int64_t max_table_cells = 400'000'000;
};

// Exact optimum of the offline knapsack with prefix energy-causality
// constraints by dynamic programming over (slot, consumed energy).
// Among equal-value optima it prefers fewer served users, then the
// lexicographically smallest selection (deferral first).
OfflineSolution solve_offline(const EpisodeInstance& instance,
                              const OfflineOptions& options = {});

// Test oracle: enumerates all 2^N selections. Throws ResourceError for N > 22.
OfflineSolution brute_force_offline(const EpisodeInstance& instance);

// True if `selection` respects energy causality at every prefix.
bool is_prefix_feasible(const EpisodeInstance& instance,
                        const std::vector<bool>& selection,
                        double tolerance = 1e-9);

}  // namespace apom

#endif  // APOM_OFFLINE_SOLVER_HPP_
