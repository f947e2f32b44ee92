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

#include "apom/offline_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "apom/errors.hpp"

namespace apom {
namespace {

struct Score {
  double value = 0.0;
  std::int64_t count = 0;
};

// Strictly better: more value, or equal value (to rounding) with fewer users.
bool better(const Score& a, const Score& b) {
  const double tol = 1e-11 * std::max({1.0, std::abs(a.value), std::abs(b.value)});
  if (a.value > b.value + tol) return true;
  if (a.value < b.value - tol) return false;
  return a.count < b.count;
}

std::int64_t to_units(double amount, std::int64_t scale, const char* what) {
  const double scaled = amount * static_cast<double>(scale);
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-6) {
    std::ostringstream msg;
    msg << what << " " << amount << " is not integral at scale " << scale
        << "; pass a larger scale or quantize the instance";
    throw ParameterError(msg.str());
  }
  return static_cast<std::int64_t>(rounded);
}

OfflineSolution finish(const EpisodeInstance& instance, std::vector<bool> selection) {
  OfflineSolution sol;
  for (std::size_t s = 0; s < selection.size(); ++s) {
    if (selection[s]) {
      sol.total_value += instance.users[s].value;
      sol.total_weight_used += instance.users[s].weight;
    }
  }
  sol.selection = std::move(selection);
  return sol;
}

}  // namespace

bool is_prefix_feasible(const EpisodeInstance& instance,
                        const std::vector<bool>& selection, double tolerance) {
  if (selection.size() != instance.users.size()) return false;
  const auto arrivals = instance.schedule.arrivals();
  std::size_t next = 0;
  double harvested = 0.0;
  double used = 0.0;
  for (std::size_t s = 0; s < selection.size(); ++s) {
    while (next < arrivals.size() &&
           arrivals[next].slot <= static_cast<std::int64_t>(s)) {
      harvested += arrivals[next++].amount;
    }
    if (selection[s]) {
      used += instance.users[s].weight;
      if (used > harvested + tolerance) return false;
    }
  }
  return true;
}

OfflineSolution solve_offline(const EpisodeInstance& instance,
                              const OfflineOptions& options) {
  validate(instance);
  if (options.scale < 1) throw ParameterError("offline solver scale must be >= 1");
  const auto n = static_cast<std::size_t>(instance.horizon);
  if (n == 0) return {};

  std::vector<std::int64_t> weight(n);
  for (std::size_t s = 0; s < n; ++s) {
    weight[s] = to_units(instance.users[s].weight, options.scale, "user weight");
    if (weight[s] <= 0) throw ParameterError("user weight rounds to zero units");
  }
  // cap[s]: scaled energy credited at or before slot s.
  std::vector<std::int64_t> cap(n, 0);
  {
    const auto arrivals = instance.schedule.arrivals();
    std::size_t next = 0;
    std::int64_t harvested = 0;
    for (std::size_t s = 0; s < n; ++s) {
      while (next < arrivals.size() &&
             arrivals[next].slot <= static_cast<std::int64_t>(s)) {
        harvested += to_units(arrivals[next++].amount, options.scale, "energy arrival");
      }
      cap[s] = harvested;
    }
  }
  const std::int64_t top = cap[n - 1];
  const double cells = static_cast<double>(n) * static_cast<double>(top + 1);
  if (cells > static_cast<double>(options.max_table_cells)) {
    std::ostringstream msg;
    msg << "offline DP table needs " << static_cast<std::int64_t>(cells)
        << " cells (" << n << " slots x " << top + 1
        << " energy levels), above the cap of " << options.max_table_cells;
    throw ResourceError(msg.str());
  }

  const auto width = static_cast<std::size_t>(top + 1);
  // defer_ok[s * width + c]: deferring user s at consumed energy c is optimal.
  std::vector<std::uint8_t> defer_ok(n * width, 1);
  std::vector<Score> next_row(width), row(width);
  for (std::size_t s = n; s-- > 0;) {
    const std::int64_t limit = cap[s];
    for (std::int64_t c = 0; c <= limit; ++c) {
      const Score defer = next_row[static_cast<std::size_t>(c)];
      Score best = defer;
      if (c + weight[s] <= limit) {
        const Score& after = next_row[static_cast<std::size_t>(c + weight[s])];
        const Score serve{instance.users[s].value + after.value, after.count + 1};
        if (better(serve, defer)) {
          best = serve;
          defer_ok[s * width + static_cast<std::size_t>(c)] = 0;
        }
      }
      row[static_cast<std::size_t>(c)] = best;
    }
    std::swap(row, next_row);
  }

  std::vector<bool> selection(n, false);
  std::int64_t consumed = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!defer_ok[s * width + static_cast<std::size_t>(consumed)]) {
      selection[s] = true;
      consumed += weight[s];
    }
  }
  return finish(instance, std::move(selection));
}

OfflineSolution brute_force_offline(const EpisodeInstance& instance) {
  validate(instance);
  const auto n = static_cast<std::size_t>(instance.horizon);
  if (n > 22) {
    throw ResourceError("brute-force oracle is limited to 22 users, got " +
                        std::to_string(n));
  }
  std::vector<double> harvested(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    harvested[s] = instance.schedule.harvested_through(static_cast<std::int64_t>(s));
  }

  // Mask bit (n-1-s) holds x_s, so increasing masks are lexicographic order.
  std::uint64_t best_mask = 0;
  Score best;
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    Score score;
    double used = 0.0;
    bool feasible = true;
    for (std::size_t s = 0; s < n && feasible; ++s) {
      if ((mask >> (n - 1 - s)) & 1U) {
        used += instance.users[s].weight;
        score.value += instance.users[s].value;
        ++score.count;
        feasible = used <= harvested[s] + 1e-9;
      }
    }
    if (feasible && better(score, best)) {
      best = score;
      best_mask = mask;
    }
  }
  std::vector<bool> selection(n, false);
  for (std::size_t s = 0; s < n; ++s) selection[s] = (best_mask >> (n - 1 - s)) & 1U;
  return finish(instance, std::move(selection));
}

}  // namespace apom
