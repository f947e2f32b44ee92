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

#include "apom/fuzzy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "apom/errors.hpp"

namespace apom {
namespace {

constexpr std::array<std::string_view, kFuzzyLevels> kClosenessLabels{
    "very-far", "far", "med", "near", "very-near"};
constexpr std::array<std::string_view, kFuzzyLevels> kLevelLabels{
    "very-low", "low", "med", "high", "very-high"};

enum Closeness : std::size_t { kVeryFar, kFar, kMedC, kNear, kVeryNear };
enum Level : std::size_t { kVeryLow, kLow, kMed, kHigh, kVeryHigh };

std::size_t parse_label(std::string_view name,
                        const std::array<std::string_view, kFuzzyLevels>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == name) return i;
  }
  throw ParameterError("unknown fuzzy label '" + std::string(name) + "'");
}

void validate_set(const MembershipSet& set, const char* what) {
  for (const auto& t : set) {
    if (!(t.a <= t.b && t.b <= t.c && t.c <= t.d)) {
      throw ParameterError(std::string(what) + " trapezoid breakpoints out of order");
    }
  }
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    double sum = 0.0;
    for (const auto& t : set) sum += t.membership(x);
    if (!(sum > 0.0)) {
      throw ParameterError(std::string(what) + " membership functions leave a gap at " +
                           std::to_string(x));
    }
  }
}

}  // namespace

double Trapezoid::membership(double x) const {
  if (x < a || x > d) return 0.0;
  if (x < b) return (x - a) / (b - a);
  if (x <= c) return 1.0;
  return (d - x) / (d - c);
}

std::string_view closeness_label(std::size_t i) { return kClosenessLabels.at(i); }
std::string_view level_label(std::size_t i) { return kLevelLabels.at(i); }
std::size_t parse_closeness_label(std::string_view name) {
  return parse_label(name, kClosenessLabels);
}
std::size_t parse_level_label(std::string_view name) { return parse_label(name, kLevelLabels); }

MembershipSet FuzzySystem::even_membership() {
  constexpr double kTop = 0.075;   // half-width of the plateau
  constexpr double kBase = 0.175;  // half-width of the support
  MembershipSet set;
  for (std::size_t i = 0; i < kFuzzyLevels; ++i) {
    const double c = 0.25 * static_cast<double>(i);
    set[i] = {c - kBase, c - kTop, c + kTop, c + kBase};
  }
  set.front().a = set.front().b = 0.0;
  set.back().c = set.back().d = 1.0;
  return set;
}

std::vector<FuzzyRule> FuzzySystem::default_rules() {
  return {
      {kVeryNear, kVeryHigh, kMed}, {kVeryNear, kHigh, kLow},
      {kVeryNear, kMed, kLow},      {kVeryNear, kLow, kVeryLow},
      {kVeryNear, kVeryLow, kVeryLow},

      {kNear, kVeryHigh, kHigh},    {kNear, kHigh, kMed},
      {kNear, kMed, kLow},          {kNear, kLow, kVeryLow},
      {kNear, kVeryLow, kVeryLow},

      {kMedC, kVeryHigh, kHigh},    {kMedC, kHigh, kMed},
      {kMedC, kMed, kMed},          {kMedC, kLow, kLow},
      {kMedC, kVeryLow, kVeryLow},

      {kFar, kVeryHigh, kVeryHigh}, {kFar, kHigh, kHigh},
      {kFar, kMed, kHigh},          {kFar, kLow, kLow},
      {kFar, kVeryLow, kLow},

      {kVeryFar, kVeryHigh, kVeryHigh}, {kVeryFar, kHigh, kVeryHigh},
      {kVeryFar, kMed, kHigh},          {kVeryFar, kLow, kMed},
      {kVeryFar, kVeryLow, kLow},
  };
}

FuzzySystem FuzzySystem::defaults() {
  return {even_membership(), even_membership(), even_membership(), default_rules()};
}

void validate(const FuzzySystem& system) {
  validate_set(system.closeness, "closeness");
  validate_set(system.fullness, "fullness");
  validate_set(system.output, "output");
  if (system.rules.size() != kFuzzyLevels * kFuzzyLevels) {
    throw ParameterError("fuzzy rule table must hold exactly 25 rules");
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : system.rules) {
    if (r.closeness >= kFuzzyLevels || r.fullness >= kFuzzyLevels ||
        r.output >= kFuzzyLevels) {
      throw ParameterError("fuzzy rule label index out of range");
    }
    if (!seen.insert({r.closeness, r.fullness}).second) {
      throw ParameterError("fuzzy rule table lists an input pair twice");
    }
  }
}

std::array<double, kFuzzyLevels> output_activation(FuzzyInputs inputs,
                                                   const FuzzySystem& system) {
  const double x = std::clamp(inputs.closeness, 0.0, 1.0);
  const double y = std::clamp(inputs.fullness, 0.0, 1.0);
  std::array<double, kFuzzyLevels> clip{};
  for (const auto& r : system.rules) {
    const double strength = std::min(system.closeness[r.closeness].membership(x),
                                     system.fullness[r.fullness].membership(y));
    clip[r.output] = std::max(clip[r.output], strength);
  }
  return clip;
}

double centroid(const MembershipSet& output, const std::array<double, kFuzzyLevels>& clip) {
  const auto envelope = [&](double y) {
    double m = 0.0;
    for (std::size_t j = 0; j < kFuzzyLevels; ++j) {
      if (clip[j] > 0.0) m = std::max(m, std::min(clip[j], output[j].membership(y)));
    }
    return m;
  };

  // Every clipped trapezoid is linear between these points.
  std::vector<double> knots{0.0, 1.0};
  for (std::size_t j = 0; j < kFuzzyLevels; ++j) {
    if (!(clip[j] > 0.0)) continue;
    const auto& t = output[j];
    for (double k : {t.a, t.b, t.c, t.d, t.a + clip[j] * (t.b - t.a),
                     t.d - clip[j] * (t.d - t.c)}) {
      if (k > 0.0 && k < 1.0) knots.push_back(k);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  // Add pairwise crossings so the envelope is a single line on each piece.
  std::vector<double> refined;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double x0 = knots[i], x1 = knots[i + 1];
    refined.push_back(x0);
    std::array<double, kFuzzyLevels> f0{}, f1{};
    for (std::size_t j = 0; j < kFuzzyLevels; ++j) {
      if (!(clip[j] > 0.0)) continue;
      f0[j] = std::min(clip[j], output[j].membership(x0));
      f1[j] = std::min(clip[j], output[j].membership(x1));
    }
    for (std::size_t p = 0; p < kFuzzyLevels; ++p) {
      for (std::size_t q = p + 1; q < kFuzzyLevels; ++q) {
        const double d0 = f0[p] - f0[q], d1 = f1[p] - f1[q];
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
          refined.push_back(x0 + (x1 - x0) * d0 / (d0 - d1));
        }
      }
    }
  }
  refined.push_back(knots.back());
  std::sort(refined.begin(), refined.end());

  double area = 0.0, moment = 0.0;
  for (std::size_t i = 0; i + 1 < refined.size(); ++i) {
    const double a = refined[i], b = refined[i + 1];
    const double h = b - a;
    if (!(h > 0.0)) continue;
    const double ma = envelope(a), mb = envelope(b);
    area += 0.5 * h * (ma + mb);
    moment += h / 6.0 * (a * (2.0 * ma + mb) + b * (ma + 2.0 * mb));
  }
  return area > 0.0 ? moment / area : 0.5;
}

double infer_threshold(FuzzyInputs inputs, const FuzzySystem& system) {
  return centroid(system.output, output_activation(inputs, system));
}

double scale_threshold(double defuzzified, const EfficiencyBounds& bounds) {
  return bounds.lower + (bounds.upper - bounds.lower) * defuzzified;
}

FuzzyInputs fuzzy_inputs(const PolicyState& state, const HarvestWindow& window) {
  const std::int64_t slot = state.slot - 1;
  const auto length = static_cast<double>(window.next_harvest - window.interval_start);
  const auto remaining = static_cast<double>(window.next_harvest - slot);
  FuzzyInputs in;
  in.closeness = length > 0.0 ? std::clamp(1.0 - remaining / length, 0.0, 1.0) : 1.0;
  in.fullness = window.available_at_start > 0.0
                    ? std::clamp(window.consumed_since_start / window.available_at_start,
                                 0.0, 1.0)
                    : 1.0;
  return in;
}

Decision fuzzy_decide(const PolicyState& state, const UserDemand& demand,
                      const HarvestWindow& window, const FuzzySystem& system,
                      const EfficiencyBounds& bounds) {
  const double cutoff =
      scale_threshold(infer_threshold(fuzzy_inputs(state, window), system), bounds);
  return {demand.efficiency() >= cutoff && demand.weight <= state.available_energy, cutoff};
}

FuzzyPolicy::FuzzyPolicy(FuzzySystem system, EfficiencyBounds bounds)
    : system_(std::move(system)), bounds_(bounds) {
  validate(system_);
  validate(bounds_);
}

Decision FuzzyPolicy::decide(const Observation& obs) const {
  return fuzzy_decide(obs.state, obs.demand, obs.window, system_, bounds_);
}

}  // namespace apom
