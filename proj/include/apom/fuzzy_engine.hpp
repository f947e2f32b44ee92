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

#ifndef APOM_FUZZY_ENGINE_HPP_
#define APOM_FUZZY_ENGINE_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "apom/policies.hpp"
#include "apom/threshold_engines.hpp"

namespace apom {

inline constexpr std::size_t kFuzzyLevels = 5;

// Membership rises on [a,b], is 1 on [b,c] and falls on [c,d]. a == b (or
// c == d) gives a shoulder.
struct Trapezoid {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double membership(double x) const;
};

using MembershipSet = std::array<Trapezoid, kFuzzyLevels>;

// Label indices run from the low end of [0,1] to the high end:
//   closeness: very-far, far, med, near, very-near (1 = harvest imminent)
//   fullness and threshold: very-low, low, med, high, very-high
std::string_view closeness_label(std::size_t i);
std::string_view level_label(std::size_t i);
std::size_t parse_closeness_label(std::string_view name);
std::size_t parse_level_label(std::string_view name);

struct FuzzyRule {
  std::size_t closeness = 0;
  std::size_t fullness = 0;
  std::size_t output = 0;
};

struct FuzzySystem {
  MembershipSet closeness;
  MembershipSet fullness;
  MembershipSet output;
  std::vector<FuzzyRule> rules;

  // Five evenly spaced trapezoids per variable (centres 0, .25, .5, .75, 1,
  // neighbours crossing at membership 0.5) and the 25-rule table.
  static FuzzySystem defaults();
  static MembershipSet even_membership();
  static std::vector<FuzzyRule> default_rules();
};

// Throws ParameterError unless every trapezoid is ordered, each variable
// covers [0,1] and the rules are a total function on the label product.
void validate(const FuzzySystem& system);

struct FuzzyInputs {
  double closeness = 0.0;
  double fullness = 0.0;
};

// Clipping level of each output label: max over rules of
// min(mu_closeness, mu_fullness).
std::array<double, kFuzzyLevels> output_activation(FuzzyInputs inputs,
                                                   const FuzzySystem& system);

// Centroid over [0,1] of max_j min(clip[j], mu_j(y)), integrated exactly on
// the piecewise-linear envelope.
double centroid(const MembershipSet& output, const std::array<double, kFuzzyLevels>& clip);

// Min activation, max aggregation, centroid defuzzification. Inputs are
// clamped to [0,1]; the result lies in [0,1].
double infer_threshold(FuzzyInputs inputs, const FuzzySystem& system);

// Affine map of a defuzzified value onto [L, U].
double scale_threshold(double defuzzified, const EfficiencyBounds& bounds);

// closeness = 1 - (slots to next harvest) / (interval length);
// fullness = consumed since the last harvest / energy available right after it.
FuzzyInputs fuzzy_inputs(const PolicyState& state, const HarvestWindow& window);

Decision fuzzy_decide(const PolicyState& state, const UserDemand& demand,
                      const HarvestWindow& window, const FuzzySystem& system,
                      const EfficiencyBounds& bounds);

class FuzzyPolicy final : public Policy {
 public:
  FuzzyPolicy(FuzzySystem system, EfficiencyBounds bounds);
  std::string name() const override { return "fuzzy"; }
  Decision decide(const Observation& obs) const override;

 private:
  FuzzySystem system_;
  EfficiencyBounds bounds_;
};

}  // namespace apom

#endif  // APOM_FUZZY_ENGINE_HPP_
