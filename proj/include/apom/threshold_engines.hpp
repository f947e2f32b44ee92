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

#ifndef APOM_THRESHOLD_ENGINES_HPP_
#define APOM_THRESHOLD_ENGINES_HPP_

#include "apom/instance.hpp"
#include "apom/policies.hpp"

namespace apom {

// L <= v/w <= U for every user the engines will see.
struct EfficiencyBounds {
  double lower = 0.0;
  double upper = 0.0;
};

void validate(const EfficiencyBounds& bounds);

// Fill fraction z = used / denominator.
struct FractionState {
  double used_energy = 0.0;
  double denominator = 1.0;

  double fraction() const { return used_energy / denominator; }
};

struct PsiValue {
  double threshold = 0.0;
  bool clamped = false;  // z was outside [0,1] and got clamped
};

// (U e / L)^z * L / e, strictly increasing from L/e at z = 0 to U at z = 1.
PsiValue evaluate_psi(double z, const EfficiencyBounds& bounds);
double psi(double z, const EfficiencyBounds& bounds);

// Fraction against the total energy of all harvests (needs foresight).
Decision monotone_decide(const PolicyState& state, const UserDemand& demand,
                         double used_energy, double total_harvest,
                         const EfficiencyBounds& bounds);

// Fraction against the energy harvested so far; drops at every harvest.
Decision jumping_decide(const PolicyState& state, const UserDemand& demand,
                        double used_energy, double harvested_so_far,
                        const EfficiencyBounds& bounds);

// ln(U/L) + 1.
double competitive_bound(const EfficiencyBounds& bounds);

class MonotonePolicy final : public Policy {
 public:
  explicit MonotonePolicy(EfficiencyBounds bounds);
  std::string name() const override { return "monotone"; }
  Decision decide(const Observation& obs) const override;

 private:
  EfficiencyBounds bounds_;
};

class JumpingPolicy final : public Policy {
 public:
  explicit JumpingPolicy(EfficiencyBounds bounds);
  std::string name() const override { return "jumping"; }
  Decision decide(const Observation& obs) const override;

 private:
  EfficiencyBounds bounds_;
};

}  // namespace apom

#endif  // APOM_THRESHOLD_ENGINES_HPP_
