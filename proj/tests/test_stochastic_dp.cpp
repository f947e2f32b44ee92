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
#include <random>

#include "apom/errors.hpp"
#include "apom/evaluation.hpp"
#include "apom/stochastic_dp.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace apom;
using apom::testing::make_config;

namespace {

// Types (5,1) and (10,1) with equal probability, q = 0.5.
DpConfig three_slot_config() {
  return make_config(3, {{{10, 1}, 0.5}, {{5, 1}, 0.5}}, 0.5, default_energy_cap(1, 3));
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(make_config(0, {{{1, 1}, 1.0}}, 0.5, 3)), ParameterError);
  CHECK_THROWS_AS(validate(make_config(3, {{{1, 1}, 1.0}}, 1.5, 3)), ParameterError);
  CHECK_THROWS_AS(validate(make_config(3, {{{4, 2}, 1.0}}, 0.5, 1)), ParameterError);
  CHECK_THROWS_AS(validate(make_config(3, {{{4, 1.5}, 1.0}}, 0.5, 4)), ParameterError);
  CHECK_NOTHROW(validate(make_config(3, {{{4, 2}, 1.0}}, 0.5, 2)));
  CHECK(default_energy_cap(5, 100) == 105);
}

TEST_CASE("terminal slot serves whenever affordable") {
  const auto config = make_config(6, {{{10, 1}, 0.3}, {{5, 1}, 0.7}}, 0.4, 8);
  const auto table = build_value_table(config);
  for (std::int64_t e = 0; e <= config.energy_cap; ++e) {
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(table.at(7, e, k) == 0.0);
      if (e >= 1) CHECK(table.at(6, e, k) == config.types[k].demand.value);
    }
  }
  const auto eta = extract_thresholds(table, config);
  CHECK(eta.at(6, 1) == 1);
  CHECK(eta.at(6, 0) == 1);
}

TEST_CASE("no energy, no value") {
  const auto config = make_config(5, {{{10, 1}, 0.5}, {{5, 1}, 0.5}}, 0.0, 5);
  const auto table = build_value_table(config);
  for (std::int64_t n = 1; n <= 5; ++n) {
    for (std::size_t k = 0; k < 2; ++k) CHECK(table.at(n, 0, k) == 0.0);
  }
}

TEST_CASE("three-slot worked example") {
  const auto config = three_slot_config();
  const auto table = build_value_table(config);
  // Index 0 is the less efficient (5,1) type.
  CHECK(table.at(1, 1, 0) == doctest::Approx(13.125).epsilon(1e-12));
  CHECK(table.at(1, 1, 1) == doctest::Approx(17.5).epsilon(1e-12));
  const double v = expected_value(table, config, 1);
  CHECK(v == doctest::Approx(15.3125).epsilon(1e-12));
  CHECK(std::abs(exhaustive_policy_oracle(config, 1) - v) <= 1e-9);
}

TEST_CASE("exhaustive oracle trivial cases") {
  const auto last = make_config(1, {{{10, 2}, 0.25}, {{3, 1}, 0.75}}, 0.5, 4);
  CHECK(exhaustive_policy_oracle(last, 2) == doctest::Approx(0.25 * 10 + 0.75 * 3));

  const auto twins = make_config(2, {{{1, 1}, 1.0}}, 0.0, 2);
  CHECK(exhaustive_policy_oracle(twins, 1) == doctest::Approx(1.0));

  const auto big = make_config(12, {{{10, 1}, 0.5}, {{5, 1}, 0.5}}, 0.5, 20);
  CHECK_THROWS_AS(exhaustive_policy_oracle(big, 1), ResourceError);
}

TEST_CASE("initial energy must lie inside the table") {
  const auto config = three_slot_config();
  const auto table = build_value_table(config);
  CHECK_THROWS_AS(expected_value(table, config, config.energy_cap + 1), ParameterError);
  CHECK_THROWS_AS(expected_value(table, config, -1), ParameterError);
}

TEST_CASE("table size guard") {
  auto config = make_config(1000, {{{10, 1}, 0.5}, {{5, 1}, 0.5}}, 0.5, 5000);
  config.max_table_entries = 1000;
  CHECK_THROWS_AS(build_value_table(config), ResourceError);
}

TEST_CASE("action values and argmax") {
  const auto config = make_config(4, {{{10, 1}, 0.6}, {{2, 1}, 0.4}}, 0.3, 6);
  const auto table = build_value_table(config);
  const auto none = action_values(table, config, 2, 0, 1);
  CHECK_FALSE(none.serve.has_value());
  CHECK_FALSE(optimal_serve(table, config, 2, 0, 1));
  for (std::int64_t n = 1; n <= 4; ++n) {
    for (std::int64_t e = 1; e <= 6; ++e) {
      for (std::size_t k = 0; k < 2; ++k) {
        const auto a = action_values(table, config, n, e, k);
        REQUIRE(a.serve.has_value());
        CHECK(table.at(n, e, k) == doctest::Approx(std::max(*a.serve, a.defer)));
        CHECK(a.defer == doctest::Approx(continuation_value(table, config, n, e)));
      }
    }
  }
}

TEST_CASE("fig4-style thresholds are nonincreasing in the slot") {
  const auto config =
      make_config(100, {{{10, 1}, 0.7}, {{5, 1}, 0.3}}, 0.5, default_energy_cap(5, 100));
  const auto table = build_value_table(config);
  const auto eta = extract_thresholds(table, config);
  CHECK(check_threshold_monotonicity(eta).pass);
  CHECK(check_threshold_structure(table, config, eta).pass);
  for (std::int64_t n = 1; n <= 100; ++n) CHECK(eta.at(n, 1) == 1);
  CHECK(eta.at(1, 0) > eta.at(100, 0));
}

TEST_CASE("structural properties on a random sweep") {
  std::mt19937_64 eng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::int64_t>(1 + eng() % 20);
    const auto k = static_cast<std::size_t>(1 + eng() % 4);
    const auto cap = static_cast<std::int64_t>(1 + eng() % 10);
    const auto config = testing::random_unit_config(eng, n, k, cap);
    const auto table = build_value_table(config);
    const auto eta = extract_thresholds(table, config);
    CHECK(check_energy_monotonicity(table).pass);
    CHECK(check_concavity(table).pass);
    CHECK(check_supermodularity(table, config).pass);
    CHECK(check_threshold_structure(table, config, eta).pass);
    CHECK(check_threshold_monotonicity(eta).pass);
    if (n > 1) CHECK(check_slot_supermodularity(table, config).checked > 0);
  }
}

TEST_CASE("a corrupted table fails the supermodularity check") {
  const auto config =
      make_config(10, {{{10, 1}, 0.5}, {{4, 1}, 0.5}}, 0.5, default_energy_cap(3, 10));
  auto table = build_value_table(config);
  REQUIRE(check_supermodularity(table, config).pass);
  table.at(6, 4, 0) = 1e6;
  const auto report = check_supermodularity(table, config);
  CHECK_FALSE(report.pass);
  REQUIRE(report.counterexample.has_value());
  CHECK(report.counterexample->n == 5);
  CHECK_FALSE(check_concavity(table).pass);
}

TEST_CASE("oracle agrees with the table on micro configs") {
  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::int64_t>(1 + eng() % 5);
    const auto k = static_cast<std::size_t>(1 + eng() % 2);
    const auto cap = static_cast<std::int64_t>(1 + eng() % 4);
    const auto config = testing::random_unit_config(eng, n, k, cap);
    const auto e0 = static_cast<std::int64_t>(eng() % static_cast<std::uint64_t>(cap + 1));
    const auto table = build_value_table(config);
    CHECK(std::abs(expected_value(table, config, e0) - exhaustive_policy_oracle(config, e0)) <=
          1e-9);
  }
}

TEST_CASE("non-unit weights agree with the oracle") {
  const auto config = make_config(3, {{{10, 1}, 0.3}, {{5, 1}, 0.15}, {{8, 4}, 0.15},
                                      {{5, 8}, 0.3}, {{2, 6}, 0.1}},
                                  0.5, 9);
  const auto table = build_value_table(config);
  for (std::int64_t e0 = 0; e0 <= 9; ++e0) {
    CHECK(std::abs(expected_value(table, config, e0) - exhaustive_policy_oracle(config, e0)) <=
          1e-9);
  }
}

TEST_CASE("simulated threshold policy matches the table value") {
  StochasticCampaign campaign;
  campaign.dp =
      make_config(100, {{{10, 1}, 0.7}, {{5, 1}, 0.3}}, 0.5, default_energy_cap(5, 100));
  campaign.e0 = 5;
  campaign.episodes = 100000;
  campaign.seed = 3;
  campaign.policies = {"dp"};
  const auto report = stochastic_comparison(campaign);
  const auto& dp = report.summary("dp");
  CHECK(std::abs(dp.mean - report.dp_expected_value) <= 3.0 * dp.std_error);
}
