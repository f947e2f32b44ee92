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

#ifndef APOM_STOCHASTIC_DP_HPP_
#define APOM_STOCHASTIC_DP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apom/instance.hpp"

namespace apom {

// Finite-horizon model: one user per slot drawn IID from `types`, a unit
// harvest after each decision with probability `q`, battery clipped at
// `energy_cap`. Type weights must be integers >= 1.
struct DpConfig {
  std::int64_t n_slots = 1;
  UserTypeSet types;
  double q = 0.0;
  std::int64_t energy_cap = 0;
  std::int64_t max_table_entries = 50'000'000;
};

// Throws ParameterError unless N >= 1, q in [0,1], integer weights and
// energy_cap >= max_k w(k).
void validate(const DpConfig& config);

// energy_cap = e0 + N: with unit harvests the battery can never clip.
std::int64_t default_energy_cap(std::int64_t e0, std::int64_t n_slots);

// Optimal expected value-to-go V*[n][e][k], n = 1..N+1 (row N+1 is zero),
// e = 0..E, k = 0..K-1 in increasing efficiency.
class ValueTable {
 public:
  ValueTable() = default;
  ValueTable(std::int64_t n_slots, std::int64_t energy_cap, std::size_t n_types);

  std::int64_t n_slots() const { return n_slots_; }
  std::int64_t energy_cap() const { return energy_cap_; }
  std::size_t n_types() const { return n_types_; }

  double at(std::int64_t n, std::int64_t e, std::size_t k) const {
    return values_[index(n, e, k)];
  }
  double& at(std::int64_t n, std::int64_t e, std::size_t k) {
    return values_[index(n, e, k)];
  }

 private:
  std::size_t index(std::int64_t n, std::int64_t e, std::size_t k) const {
    return (static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(energy_cap_ + 1) +
            static_cast<std::size_t>(e)) *
               n_types_ +
           k;
  }

  std::int64_t n_slots_ = 0;
  std::int64_t energy_cap_ = 0;
  std::size_t n_types_ = 0;
  std::vector<double> values_;
};

// eta[n][k]: least battery level at which serving type k in slot n is
// (weakly) optimal; energy_cap + 1 when it never is.
class ThresholdTable {
 public:
  ThresholdTable() = default;
  ThresholdTable(std::int64_t n_slots, std::int64_t energy_cap, std::size_t n_types);

  std::int64_t n_slots() const { return n_slots_; }
  std::int64_t energy_cap() const { return energy_cap_; }
  std::size_t n_types() const { return n_types_; }
  std::int64_t never() const { return energy_cap_ + 1; }

  std::int64_t at(std::int64_t n, std::size_t k) const {
    return eta_[static_cast<std::size_t>(n - 1) * n_types_ + k];
  }
  std::int64_t& at(std::int64_t n, std::size_t k) {
    return eta_[static_cast<std::size_t>(n - 1) * n_types_ + k];
  }

 private:
  std::int64_t n_slots_ = 0;
  std::int64_t energy_cap_ = 0;
  std::size_t n_types_ = 0;
  std::vector<std::int64_t> eta_;
};

// Backward induction.
ValueTable build_value_table(const DpConfig& config);

// E_{k',Q} V*[n+1](min(e + Q, E), k'): value of leaving slot n with battery e.
double continuation_value(const ValueTable& table, const DpConfig& config,
                          std::int64_t n, std::int64_t e);

// Value of serving (if affordable) and of deferring type k at (n, e).
struct ActionValues {
  std::optional<double> serve;
  double defer = 0.0;
};
ActionValues action_values(const ValueTable& table, const DpConfig& config,
                           std::int64_t n, std::int64_t e, std::size_t k);

// Serve iff affordable and serve >= defer - 1e-9.
bool optimal_serve(const ValueTable& table, const DpConfig& config, std::int64_t n,
                   std::int64_t e, std::size_t k);

ThresholdTable extract_thresholds(const ValueTable& table, const DpConfig& config);

// sum_k p(k) V*[1][e0][k].
double expected_value(const ValueTable& table, const DpConfig& config, std::int64_t e0);

struct Counterexample {
  std::int64_t n = 0;
  std::int64_t e = 0;
  std::size_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyReport {
  std::string property;
  bool pass = true;
  std::size_t checked = 0;
  std::optional<Counterexample> counterexample;
};

inline constexpr double kPropertyTolerance = 1e-9;

// V1(e+1,k) - V0(e+1,k) >= V1(e,k) - V0(e,k) for every e >= w(k).
PropertyReport check_supermodularity(const ValueTable& table, const DpConfig& config);
// V*[n][e+1][k] >= V*[n][e][k].
PropertyReport check_energy_monotonicity(const ValueTable& table);
// V*[n][e][k] - V*[n][e-1][k] >= V*[n][e+1][k] - V*[n][e][k].
PropertyReport check_concavity(const ValueTable& table);
// The serve set in e is an up-set and `thresholds` reproduces every argmax.
PropertyReport check_threshold_structure(const ValueTable& table, const DpConfig& config,
                                         const ThresholdTable& thresholds);
// eta[n][k] >= eta[n+1][k].
PropertyReport check_threshold_monotonicity(const ThresholdTable& thresholds);
// V1 - V0 at (n+1, e, k) >= V1 - V0 at (n, e, k); diagnostic only.
PropertyReport check_slot_supermodularity(const ValueTable& table, const DpConfig& config);

// Optimal expected value from battery e0 by recursing over the full scenario
// tree of (type, harvest) outcomes without memoisation. Throws ResourceError
// when (2K)^N exceeds 10^6.
double exhaustive_policy_oracle(const DpConfig& config, std::int64_t e0);

}  // namespace apom

#endif  // APOM_STOCHASTIC_DP_HPP_
