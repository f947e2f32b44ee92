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

#include "apom/errors.hpp"
#include "apom/evaluation.hpp"
#include "apom/presets.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace apom;

namespace {

CampaignConfig small_campaign(std::vector<std::string> policies, std::int64_t trials) {
  CampaignConfig c;
  c.policies = std::move(policies);
  c.trials = trials;
  c.seed = 17;
  c.generator.n_users = 200;
  c.generator.schedule = even_schedule(200, 400.0, 3);
  return c;
}

}  // namespace

TEST_CASE("offline replay scores a ratio of exactly one") {
  const auto report = run_campaign(small_campaign({"offline-replay"}, 1));
  const auto& s = report.summary("offline-replay");
  CHECK(s.average_ratio == 1.0);
  CHECK(s.worst_ratio == 1.0);
  CHECK(s.best_ratio == 1.0);
  CHECK(s.average_total_value == report.offline.average_total_value);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].ratio == 1.0);
}

TEST_CASE("campaign report invariants") {
  const auto report =
      run_campaign(small_campaign({"greedy", "monotone", "jumping", "fuzzy"}, 40));
  CHECK(report.rows.size() == 160);
  CHECK(report.bounds.ratio_below_one == 0);
  CHECK(report.bounds.monotone_bound == doctest::Approx(1.5108256237659907));
  CHECK(report.failures.empty());
  for (const auto& s : report.policies) {
    CHECK(s.valid_trials == 40);
    CHECK(s.worst_ratio >= s.average_ratio);
    CHECK(s.average_ratio >= s.best_ratio);
    CHECK(s.best_ratio >= 1.0);
    CHECK(s.worst_total_value >= 0.0);
    CHECK(s.best_total_value >= s.average_total_value);
  }
  for (const auto& r : report.rows) CHECK(r.alg_value <= r.opt_value + 1e-9);
  CHECK(report.rows[0].trial == 0);
  CHECK(report.rows[0].policy == "greedy");
  CHECK(report.rows[1].policy == "monotone");
  CHECK_THROWS_AS(report.summary("nope"), ParameterError);
}

TEST_CASE("campaigns are reproducible from the seed") {
  const auto a = run_campaign(small_campaign({"monotone", "fuzzy"}, 10));
  const auto b = run_campaign(small_campaign({"monotone", "fuzzy"}, 10));
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].alg_value == b.rows[i].alg_value);
    CHECK(a.rows[i].opt_value == b.rows[i].opt_value);
  }
}

TEST_CASE("fixed instances replace the generator") {
  auto c = small_campaign({"greedy"}, 3);
  c.fixed_instances.push_back(testing::make_instance({{3, 1}, {5, 1}}, {{0, 1.0}}));
  const auto report = run_campaign(c);
  CHECK(report.offline.average_total_value == 5.0);
  CHECK(report.summary("greedy").average_ratio == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("a failing policy marks its trials invalid") {
  auto c = small_campaign({"greedy", "dp"}, 4);
  c.context.thresholds = std::make_shared<const ThresholdTable>(2, 2, 1);
  const auto report = run_campaign(c);
  CHECK(report.summary("dp").invalid_trials == 4);
  CHECK(report.summary("dp").valid_trials == 0);
  CHECK(report.summary("greedy").valid_trials == 4);
  CHECK(report.failures.size() == 4);
}

TEST_CASE("campaign configuration errors") {
  CHECK_THROWS_AS(run_campaign(small_campaign({"greedy"}, 0)), ParameterError);
  CHECK_THROWS_AS(run_campaign(small_campaign({}, 3)), ParameterError);
  CHECK_THROWS_AS(run_campaign(small_campaign({"oracle"}, 3)), ParameterError);
  CHECK_THROWS_AS(run_campaign(small_campaign({"ga"}, 3)), ParameterError);
}

TEST_CASE("two-type upper bound branches") {
  const auto harvest = two_type_upper_bound(10, 1, 5, 1, 0.7, 0.5, 100);
  CHECK(harvest.regime == UpperBoundResult::Regime::kHarvestLimited);
  CHECK(harvest.bound == doctest::Approx(500.0));

  const auto demand = two_type_upper_bound(10, 1, 5, 1, 0.3, 0.5, 100);
  CHECK(demand.regime == UpperBoundResult::Regime::kDemandLimited);
  CHECK(demand.bound == doctest::Approx(400.0));

  CHECK(two_type_upper_bound(10, 1, 5, 1, 0.0, 0.5, 100).bound == doctest::Approx(250.0));
  CHECK_THROWS_AS(two_type_upper_bound(5, 1, 10, 1, 0.3, 0.5, 100), ParameterError);
  CHECK_THROWS_AS(two_type_upper_bound(10, 1, 5, 1, 1.3, 0.5, 100), ParameterError);
}

TEST_CASE("simulated optimum respects the two-type bound") {
  StochasticCampaign campaign;
  campaign.dp = testing::make_config(100, {{{10, 1}, 0.3}, {{5, 1}, 0.7}}, 0.5, 100);
  campaign.e0 = 0;
  campaign.episodes = 100000;
  campaign.seed = 21;
  campaign.policies = {"dp"};
  const auto report = stochastic_comparison(campaign);
  REQUIRE(report.two_type_bound.has_value());
  CHECK(report.two_type_bound->bound == doctest::Approx(400.0));
  const auto& dp = report.summary("dp");
  CHECK(dp.mean <= report.two_type_bound->bound + 3.0 * dp.std_error);
}

TEST_CASE("stochastic comparison on the fig4 preset") {
  const auto preset = stochastic_preset("fig4");
  StochasticCampaign campaign;
  campaign.dp = preset.dp;
  campaign.e0 = preset.e0;
  campaign.episodes = 4000;
  campaign.seed = 4;
  campaign.record_trajectories = true;
  const auto report = stochastic_comparison(campaign);
  REQUIRE(report.policies.size() == 4);
  const auto& dp = report.summary("dp");
  CHECK(std::abs(dp.mean - report.dp_expected_value) <= 4.0 * dp.std_error);
  for (const auto& s : report.policies) {
    REQUIRE(s.mean_trajectory.size() == 100);
    CHECK(s.mean_trajectory.back() == doctest::Approx(s.mean));
    for (std::size_t t = 1; t < 100; ++t) CHECK(s.mean_trajectory[t] >= s.mean_trajectory[t - 1]);
  }
  CHECK(report.summary("conservative").mean > report.summary("greedy").mean);
}

TEST_CASE("first-interval precondition") {
  // Everything sits in the first interval, so the relaxed run spends at most B0.
  const auto cheap = testing::make_instance({{10, 1}, {10, 1}, {6, 1}, {6, 1}},
                                            {{0, 10.0}, {2, 10.0}});
  CHECK(satisfies_first_interval_precondition(cheap, {6.0, 10.0}));
  // A tiny B0 with eager early users breaks it.
  const auto tight = testing::make_instance({{10, 3}, {10, 3}, {6, 1}, {6, 1}},
                                            {{0, 1.0}, {2, 10.0}});
  CHECK_FALSE(satisfies_first_interval_precondition(tight, {6.0, 10.0}));
  const auto single = testing::make_instance({{10, 3}}, {{0, 1.0}});
  CHECK(satisfies_first_interval_precondition(single, {6.0, 10.0}));
}

TEST_CASE("policy factory") {
  PolicyContext ctx;
  CHECK(make_policy("greedy", ctx)->name() == "greedy");
  CHECK(make_policy("monotone", ctx)->name() == "monotone");
  CHECK(make_policy("jumping", ctx)->name() == "jumping");
  CHECK(make_policy("fuzzy", ctx)->name() == "fuzzy");
  CHECK_THROWS_AS(make_policy("conservative", ctx), ParameterError);
  CHECK_THROWS_AS(make_policy("expected-threshold", ctx), ParameterError);
  CHECK_THROWS_AS(make_policy("dp", ctx), ParameterError);
  ctx.best_efficiency = 10.0;
  CHECK(make_policy("conservative", ctx)->name() == "conservative");
  ctx.chromosome = Chromosome::constant(0.0);
  CHECK(make_policy("ga", ctx)->name() == "ga");
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 6);
  const auto t1 = deterministic_preset("table1");
  CHECK(t1.generator.schedule.harvest_count() == 10);
  CHECK(t1.generator.schedule.total() == 2000.0);
  CHECK(t1.generator.n_users == 1000);
  CHECK(deterministic_preset("table2").generator.schedule.harvest_count() == 1);
  CHECK_THROWS_AS(deterministic_preset("fig4"), ParameterError);
  CHECK(is_stochastic_preset("fig7"));
  const auto f7 = stochastic_preset("fig7");
  CHECK(f7.dp.types.size() == 5);
  CHECK_NOTHROW(validate(f7.dp));
  CHECK(stochastic_preset("fig5").dp.types[1].probability == doctest::Approx(0.3));
  CHECK_THROWS_AS(stochastic_preset("table1"), ParameterError);

  const auto a = training_instances(t1.generator, 2, 42);
  CHECK(a[0].schedule == t1.generator.schedule);
  CHECK_FALSE(a[0] == generate(t1.generator, RandomSource(42).derive(0)));
}
