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

#include <cmath>
#include <memory>

#include "apom/errors.hpp"
#include "apom/policies.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace apom;
using apom::testing::make_instance;

namespace {

PolicyState at(double energy, std::int64_t slot = 1, std::int64_t horizon = 100) {
  return {slot, energy, horizon};
}

// Serves everyone, affordable or not.
class Reckless final : public Policy {
 public:
  std::string name() const override { return "reckless"; }
  Decision decide(const Observation&) const override { return {true, std::nullopt}; }
};

// Records the energy each decision saw.
class Spy final : public Policy {
 public:
  mutable std::vector<Observation> seen;
  std::string name() const override { return "spy"; }
  Decision decide(const Observation& obs) const override {
    seen.push_back(obs);
    return greedy_decide(obs.state, obs.demand);
  }
};

}  // namespace

TEST_CASE("greedy boundary cases") {
  CHECK_FALSE(greedy_decide(at(0), {3, 1}).serve);
  CHECK(greedy_decide(at(5), {3, 5}).serve);
  CHECK_FALSE(greedy_decide(at(4.99), {3, 5}).serve);
}

TEST_CASE("conservative serves only the best efficiency") {
  CHECK_FALSE(conservative_decide(at(50), {5, 1}, 10.0).serve);
  CHECK(conservative_decide(at(1), {10, 1}, 10.0).serve);
  CHECK_FALSE(conservative_decide(at(0.5), {10, 1}, 10.0).serve);
  CHECK(conservative_decide(at(3), {20.0 + 1e-12, 2}, 10.0).serve);
}

TEST_CASE("expected threshold closed form") {
  const auto types = UserTypeSet::make({{{5, 1}, 0.3}, {{10, 1}, 0.7}});
  CHECK(expected_threshold(1, 100, 0, types, 0.5) == doctest::Approx(20.0));
  CHECK(expected_threshold(1, 100, 0, types, 0.5, HorizonFactor::kRemainingExclusive) ==
        doctest::Approx(19.8));
  CHECK(expected_threshold(1, 100, 1, types, 0.5) == doctest::Approx(-50.0));
  CHECK(expected_threshold(100, 100, 0, types, 0.5) == doctest::Approx(0.2));

  CHECK_FALSE(expected_threshold_decide(at(19, 1), 0, types, 0.5).serve);
  CHECK(expected_threshold_decide(at(20, 1), 0, types, 0.5).serve);
  CHECK(expected_threshold_decide(at(1, 1), 1, types, 0.5).serve);
  CHECK_FALSE(expected_threshold_decide(at(0, 1), 1, types, 0.5).serve);
  CHECK(expected_threshold_decide(at(1, 100), 0, types, 0.5).serve);
}

TEST_CASE("expected threshold weights future consumption by type weight") {
  const auto types = UserTypeSet::make({{{2, 6}, 0.5}, {{8, 4}, 0.25}, {{10, 1}, 0.25}});
  // Types sort as (2,6), (8,4), (10,1).
  CHECK(expected_threshold(1, 10, 0, types, 0.5) == doctest::Approx(10 * (1.0 + 0.25 - 0.5)));
  // The own weight is a floor when the cutoff is small.
  CHECK_FALSE(expected_threshold_decide(at(3, 10, 10), 1, types, 0.5).serve);
  CHECK(expected_threshold_decide(at(4, 10, 10), 1, types, 0.5).serve);
}

TEST_CASE("expected threshold with one type is greedy") {
  const auto types = UserTypeSet::make({{{4, 2}, 1.0}});
  for (double e : {0.0, 1.0, 2.0, 7.5}) {
    for (std::int64_t n : {1, 50, 100}) {
      CHECK(expected_threshold_decide(at(e, n), 0, types, 0.3).serve ==
            greedy_decide(at(e, n), types[0].demand).serve);
    }
  }
}

TEST_CASE("dp threshold lookup") {
  ThresholdTable table(3, 5, 2);
  table.at(2, 0) = 3;
  CHECK(dp_policy_decide(at(3, 2, 3), 0, table).serve);
  CHECK_FALSE(dp_policy_decide(at(2, 2, 3), 0, table).serve);
  CHECK_THROWS_AS(dp_policy_decide(at(3, 4, 3), 0, table), ContractError);
  CHECK_THROWS_AS(dp_policy_decide(at(3, 1, 3), 2, table), ContractError);
  CHECK_THROWS_AS(dp_policy_decide(at(6, 1, 3), 0, table), ContractError);
  CHECK_THROWS_AS(dp_policy_decide(at(2.5, 1, 3), 0, table), ContractError);
}

TEST_CASE("episode runner credits arrivals before the decision") {
  const auto inst = make_instance({{4, 2}, {3, 1}, {5, 2}}, {{0, 1.0}, {2, 2.0}});
  Spy spy;
  RunOptions options;
  options.record_trace = true;
  options.record_cumulative = true;
  const auto result = run_episode(inst, spy, options);
  REQUIRE(spy.seen.size() == 3);
  CHECK(spy.seen[0].state.available_energy == 1.0);
  CHECK(spy.seen[1].state.available_energy == 1.0);
  CHECK(spy.seen[2].state.available_energy == 2.0);
  CHECK(spy.seen[2].harvested_so_far == 3.0);
  CHECK(spy.seen[2].used_energy == 1.0);
  CHECK(spy.seen[0].total_harvest == 3.0);
  CHECK(spy.seen[1].window.next_harvest == 2);
  CHECK(spy.seen[2].window.interval_start == 2);
  CHECK(spy.seen[2].window.next_harvest == 3);
  CHECK(spy.seen[2].window.available_at_start == 2.0);
  CHECK(result.total_value == 8.0);
  CHECK(result.total_weight == 3.0);
  CHECK(result.cumulative_value == std::vector<double>{0.0, 3.0, 8.0});
  CHECK(trace_consistent(inst, result));
  CHECK(result.trace[1].served);
  CHECK(result.trace[1].slot == 2);
}

TEST_CASE("runner rejects unaffordable service") {
  const auto inst = make_instance({{4, 2}}, {{0, 1.0}});
  CHECK_THROWS_AS(run_episode(inst, Reckless{}), ContractError);
}

TEST_CASE("battery cap clips arrivals") {
  const auto inst = make_instance({{1, 1}, {1, 1}, {1, 1}}, {{0, 5.0}});
  RunOptions options;
  options.battery_cap = 2.0;
  CHECK(run_episode(inst, GreedyPolicy{}, options).total_value == 2.0);
}

TEST_CASE("replay reproduces a selection") {
  const auto inst = make_instance({{4, 2}, {3, 1}, {5, 2}}, {{0, 3.0}});
  const auto result = run_episode(inst, ReplayPolicy({true, false, false}));
  CHECK(result.total_value == 4.0);
  CHECK_THROWS_AS(run_episode(inst, ReplayPolicy({true})), ContractError);
}

TEST_CASE("traces of every built-in policy respect causality") {
  const auto types = UserTypeSet::make({{{5, 1}, 0.3}, {{10, 1}, 0.7}});
  const RandomSource root(8);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto ep = sample_stochastic_episode(types, {0.4}, 60, 2, root.derive(t));
    RunOptions options;
    options.record_trace = true;
    std::vector<std::unique_ptr<Policy>> policies;
    policies.push_back(std::make_unique<GreedyPolicy>());
    policies.push_back(std::make_unique<ConservativePolicy>(10.0));
    policies.push_back(std::make_unique<ExpectedThresholdPolicy>(types, 0.4));
    for (const auto& p : policies) CHECK(trace_consistent(ep, run_episode(ep, *p, options)));
  }
}
