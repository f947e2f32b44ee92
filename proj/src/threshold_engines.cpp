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

#include "apom/threshold_engines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apom/errors.hpp"

namespace apom {

void validate(const EfficiencyBounds& bounds) {
  if (!(bounds.lower > 0.0) || bounds.upper < bounds.lower ||
      !std::isfinite(bounds.upper)) {
    throw ParameterError("efficiency bounds must satisfy 0 < L <= U");
  }
}

PsiValue evaluate_psi(double z, const EfficiencyBounds& bounds) {
  PsiValue out;
  if (z < 0.0 || z > 1.0) {
    out.clamped = true;
    z = std::clamp(z, 0.0, 1.0);
  }
  constexpr double e = std::numbers::e;
  out.threshold = std::pow(bounds.upper * e / bounds.lower, z) * bounds.lower / e;
  // pow rounding can land a hair off U at z = 1.
  if (z == 1.0) out.threshold = bounds.upper;
  return out;
}

double psi(double z, const EfficiencyBounds& bounds) {
  return evaluate_psi(z, bounds).threshold;
}

Decision monotone_decide(const PolicyState& state, const UserDemand& demand,
                         double used_energy, double total_harvest,
                         const EfficiencyBounds& bounds) {
  if (!(total_harvest > 0.0)) {
    throw ParameterError("monotone threshold needs a positive total harvest");
  }
  const double cutoff = psi(FractionState{used_energy, total_harvest}.fraction(), bounds);
  return {demand.efficiency() >= cutoff && demand.weight <= state.available_energy, cutoff};
}

Decision jumping_decide(const PolicyState& state, const UserDemand& demand,
                        double used_energy, double harvested_so_far,
                        const EfficiencyBounds& bounds) {
  if (!(harvested_so_far > 0.0)) {
    // Nothing harvested yet, so nothing is affordable either.
    return {false, bounds.upper};
  }
  const double cutoff =
      psi(FractionState{used_energy, harvested_so_far}.fraction(), bounds);
  return {demand.efficiency() >= cutoff && demand.weight <= state.available_energy, cutoff};
}

double competitive_bound(const EfficiencyBounds& bounds) {
  validate(bounds);
  return std::log(bounds.upper / bounds.lower) + 1.0;
}

MonotonePolicy::MonotonePolicy(EfficiencyBounds bounds) : bounds_(bounds) {
  validate(bounds_);
}

Decision MonotonePolicy::decide(const Observation& obs) const {
  return monotone_decide(obs.state, obs.demand, obs.used_energy, obs.total_harvest,
                         bounds_);
}

JumpingPolicy::JumpingPolicy(EfficiencyBounds bounds) : bounds_(bounds) {
  validate(bounds_);
}

Decision JumpingPolicy::decide(const Observation& obs) const {
  return jumping_decide(obs.state, obs.demand, obs.used_energy, obs.harvested_so_far,
                        bounds_);
}

}  // namespace apom
