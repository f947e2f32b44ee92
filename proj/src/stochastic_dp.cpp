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

#include "apom/stochastic_dp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "apom/errors.hpp"

namespace apom {
namespace {

std::int64_t weight_units(const DpConfig& config, std::size_t k) {
  return static_cast<std::int64_t>(config.types[k].demand.weight);
}

PropertyReport fail(PropertyReport report, Counterexample where) {
  report.pass = false;
  report.counterexample = where;
  return report;
}

}  // namespace

void validate(const DpConfig& config) {
  if (config.n_slots < 1) throw ParameterError("DP horizon must be >= 1 slot");
  if (config.types.empty()) throw ParameterError("DP config has no user types");
  if (!(config.q >= 0.0 && config.q <= 1.0)) {
    throw ParameterError("harvest probability q must lie in [0,1]");
  }
  if (!config.types.integer_weights()) {
    throw ParameterError("DP user weights must be integers >= 1");
  }
  std::int64_t max_w = 0;
  for (std::size_t k = 0; k < config.types.size(); ++k) {
    max_w = std::max(max_w, weight_units(config, k));
  }
  if (config.energy_cap < max_w) {
    throw ParameterError("energy cap must be at least the largest type weight");
  }
}

std::int64_t default_energy_cap(std::int64_t e0, std::int64_t n_slots) {
  return e0 + n_slots;
}

ValueTable::ValueTable(std::int64_t n_slots, std::int64_t energy_cap, std::size_t n_types)
    : n_slots_(n_slots),
      energy_cap_(energy_cap),
      n_types_(n_types),
      values_(static_cast<std::size_t>(n_slots + 1) *
                  static_cast<std::size_t>(energy_cap + 1) * n_types,
              0.0) {}

ThresholdTable::ThresholdTable(std::int64_t n_slots, std::int64_t energy_cap,
                               std::size_t n_types)
    : n_slots_(n_slots),
      energy_cap_(energy_cap),
      n_types_(n_types),
      eta_(static_cast<std::size_t>(n_slots) * n_types, energy_cap + 1) {}

double continuation_value(const ValueTable& table, const DpConfig& config,
                          std::int64_t n, std::int64_t e) {
  const std::int64_t up = std::min(e + 1, table.energy_cap());
  double sum = 0.0;
  for (std::size_t k = 0; k < table.n_types(); ++k) {
    const double p = config.types[k].probability;
    sum += p * (config.q * table.at(n + 1, up, k) +
                (1.0 - config.q) * table.at(n + 1, e, k));
  }
  return sum;
}

ActionValues action_values(const ValueTable& table, const DpConfig& config,
                           std::int64_t n, std::int64_t e, std::size_t k) {
  ActionValues out;
  out.defer = continuation_value(table, config, n, e);
  const std::int64_t w = weight_units(config, k);
  if (w <= e) {
    out.serve = config.types[k].demand.value + continuation_value(table, config, n, e - w);
  }
  return out;
}

bool optimal_serve(const ValueTable& table, const DpConfig& config, std::int64_t n,
                   std::int64_t e, std::size_t k) {
  const auto av = action_values(table, config, n, e, k);
  return av.serve && *av.serve >= av.defer - kPropertyTolerance;
}

ValueTable build_value_table(const DpConfig& config) {
  validate(config);
  const double entries = static_cast<double>(config.n_slots + 1) *
                         static_cast<double>(config.energy_cap + 1) *
                         static_cast<double>(config.types.size());
  if (entries > static_cast<double>(config.max_table_entries)) {
    std::ostringstream msg;
    msg << "DP value table needs " << static_cast<std::int64_t>(entries)
        << " entries, above the cap of " << config.max_table_entries;
    throw ResourceError(msg.str());
  }
  const std::int64_t cap = config.energy_cap;
  const std::size_t n_types = config.types.size();
  ValueTable table(config.n_slots, cap, n_types);

  // cont[e] = E V*[n+1](min(e+Q, E), k') for the row being filled.
  std::vector<double> cont(static_cast<std::size_t>(cap + 1));
  for (std::int64_t n = config.n_slots; n >= 1; --n) {
    for (std::int64_t e = 0; e <= cap; ++e) {
      cont[static_cast<std::size_t>(e)] = continuation_value(table, config, n, e);
    }
    for (std::int64_t e = 0; e <= cap; ++e) {
      for (std::size_t k = 0; k < n_types; ++k) {
        const std::int64_t w = weight_units(config, k);
        const double defer = cont[static_cast<std::size_t>(e)];
        double best = defer;
        if (w <= e) {
          best = std::max(defer, config.types[k].demand.value +
                                     cont[static_cast<std::size_t>(e - w)]);
        }
        table.at(n, e, k) = best;
      }
    }
  }
  return table;
}

ThresholdTable extract_thresholds(const ValueTable& table, const DpConfig& config) {
  ThresholdTable eta(table.n_slots(), table.energy_cap(), table.n_types());
  for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
    for (std::size_t k = 0; k < table.n_types(); ++k) {
      for (std::int64_t e = 0; e <= table.energy_cap(); ++e) {
        if (optimal_serve(table, config, n, e, k)) {
          eta.at(n, k) = e;
          break;
        }
      }
    }
  }
  return eta;
}

double expected_value(const ValueTable& table, const DpConfig& config, std::int64_t e0) {
  if (e0 < 0 || e0 > table.energy_cap()) {
    throw ParameterError("initial energy outside [0, energy_cap]");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < table.n_types(); ++k) {
    sum += config.types[k].probability * table.at(1, e0, k);
  }
  return sum;
}

PropertyReport check_supermodularity(const ValueTable& table, const DpConfig& config) {
  PropertyReport report;
  report.property = "supermodularity in (energy, decision)";
  for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
    for (std::size_t k = 0; k < table.n_types(); ++k) {
      const std::int64_t w = weight_units(config, k);
      for (std::int64_t e = w; e < table.energy_cap(); ++e) {
        const auto lo = action_values(table, config, n, e, k);
        const auto hi = action_values(table, config, n, e + 1, k);
        const double lhs = *hi.serve - hi.defer;
        const double rhs = *lo.serve - lo.defer;
        ++report.checked;
        if (lhs < rhs - kPropertyTolerance) return fail(report, {n, e, k, lhs, rhs});
      }
    }
  }
  return report;
}

PropertyReport check_energy_monotonicity(const ValueTable& table) {
  PropertyReport report;
  report.property = "value nondecreasing in energy";
  for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
    for (std::size_t k = 0; k < table.n_types(); ++k) {
      for (std::int64_t e = 0; e < table.energy_cap(); ++e) {
        const double lhs = table.at(n, e + 1, k);
        const double rhs = table.at(n, e, k);
        ++report.checked;
        if (lhs < rhs - kPropertyTolerance) return fail(report, {n, e, k, lhs, rhs});
      }
    }
  }
  return report;
}

PropertyReport check_concavity(const ValueTable& table) {
  PropertyReport report;
  report.property = "value concave in energy";
  for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
    for (std::size_t k = 0; k < table.n_types(); ++k) {
      for (std::int64_t e = 1; e < table.energy_cap(); ++e) {
        const double lhs = table.at(n, e, k) - table.at(n, e - 1, k);
        const double rhs = table.at(n, e + 1, k) - table.at(n, e, k);
        ++report.checked;
        if (lhs < rhs - kPropertyTolerance) return fail(report, {n, e, k, lhs, rhs});
      }
    }
  }
  return report;
}

PropertyReport check_threshold_structure(const ValueTable& table, const DpConfig& config,
                                         const ThresholdTable& thresholds) {
  PropertyReport report;
  report.property = "threshold policy reproduces argmax";
  for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
    for (std::size_t k = 0; k < table.n_types(); ++k) {
      bool serving = false;
      for (std::int64_t e = 0; e <= table.energy_cap(); ++e) {
        const bool serve = optimal_serve(table, config, n, e, k);
        const bool by_threshold = e >= thresholds.at(n, k);
        ++report.checked;
        if (serving && !serve) {
          // Serve region is not an up-set: no threshold exists.
          return fail(report, {n, e, k, 0.0, 1.0});
        }
        if (serve != by_threshold) {
          return fail(report, {n, e, k, static_cast<double>(by_threshold),
                               static_cast<double>(serve)});
        }
        serving = serving || serve;
      }
    }
  }
  return report;
}

PropertyReport check_threshold_monotonicity(const ThresholdTable& thresholds) {
  PropertyReport report;
  report.property = "thresholds nonincreasing in slot";
  for (std::int64_t n = 1; n < thresholds.n_slots(); ++n) {
    for (std::size_t k = 0; k < thresholds.n_types(); ++k) {
      const auto now = thresholds.at(n, k);
      const auto later = thresholds.at(n + 1, k);
      ++report.checked;
      if (later > now) {
        return fail(report, {n, 0, k, static_cast<double>(now), static_cast<double>(later)});
      }
    }
  }
  return report;
}

PropertyReport check_slot_supermodularity(const ValueTable& table, const DpConfig& config) {
  PropertyReport report;
  report.property = "supermodularity in (slot, decision)";
  for (std::int64_t n = 1; n < table.n_slots(); ++n) {
    for (std::size_t k = 0; k < table.n_types(); ++k) {
      const std::int64_t w = weight_units(config, k);
      for (std::int64_t e = w; e <= table.energy_cap(); ++e) {
        const auto now = action_values(table, config, n, e, k);
        const auto later = action_values(table, config, n + 1, e, k);
        const double lhs = *later.serve - later.defer;
        const double rhs = *now.serve - now.defer;
        ++report.checked;
        if (lhs < rhs - kPropertyTolerance) return fail(report, {n, e, k, lhs, rhs});
      }
    }
  }
  return report;
}

namespace {

struct ScenarioTree {
  const DpConfig& config;

  double node(std::int64_t n, std::int64_t e, std::size_t k) const {
    const auto& demand = config.types[k].demand;
    const double defer = after(n, e);
    const auto w = static_cast<std::int64_t>(demand.weight);
    if (w > e) return defer;
    return std::max(defer, demand.value + after(n, e - w));
  }

  // Expected value of the subtree entered after deciding slot n with battery e.
  double after(std::int64_t n, std::int64_t e) const {
    if (n == config.n_slots) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < config.types.size(); ++k) {
      const double p = config.types[k].probability;
      if (config.q > 0.0) {
        sum += p * config.q * node(n + 1, std::min(e + 1, config.energy_cap), k);
      }
      if (config.q < 1.0) sum += p * (1.0 - config.q) * node(n + 1, e, k);
    }
    return sum;
  }
};

}  // namespace

double exhaustive_policy_oracle(const DpConfig& config, std::int64_t e0) {
  validate(config);
  const double leaves = std::pow(2.0 * static_cast<double>(config.types.size()),
                                 static_cast<double>(config.n_slots));
  if (leaves > 1e6) {
    std::ostringstream msg;
    msg << "scenario tree has " << leaves << " leaves, above the 1e6 guard";
    throw ResourceError(msg.str());
  }
  if (e0 < 0 || e0 > config.energy_cap) {
    throw ParameterError("initial energy outside [0, energy_cap]");
  }
  const ScenarioTree tree{config};
  double sum = 0.0;
  for (std::size_t k = 0; k < config.types.size(); ++k) {
    sum += config.types[k].probability * tree.node(1, e0, k);
  }
  return sum;
}

}  // namespace apom
