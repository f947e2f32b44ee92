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

#include <algorithm>
#include <cmath>

#include "apom/errors.hpp"
#include "apom/evaluation.hpp"
#include "apom/ga_optimizer.hpp"
#include "apom/presets.hpp"
#include "doctest.h"

using namespace apom;

namespace {

const EfficiencyBounds kBounds{6.0, 10.0};

std::vector<EpisodeInstance> pool_instances(std::size_t count, std::int64_t users,
                                            std::size_t harvests, std::uint64_t seed) {
  GeneratorParams params;
  params.n_users = users;
  params.schedule = even_schedule(users, 2.0 * static_cast<double>(users), harvests);
  std::vector<EpisodeInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(generate(params, RandomSource(seed).derive(i)));
  }
  return out;
}

GaConfig small_config(std::uint64_t seed) {
  GaConfig c;
  c.population_size = 12;
  c.generations = 15;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("bucket mapping") {
  CHECK(bucket_of(0.0) == 0);
  CHECK(bucket_of(0.0005) == 0);
  CHECK(bucket_of(0.001) == 1);
  CHECK(bucket_of(0.5) == 500);
  CHECK(bucket_of(0.9999) == 999);
  CHECK(bucket_of(1.0) == 999);
  CHECK(bucket_of(1.5) == 999);
  CHECK(bucket_of(-0.2) == 0);
}

TEST_CASE("competitive ratio conventions") {
  CHECK(competitive_ratio(10.0, 5.0) == 2.0);
  CHECK(competitive_ratio(0.0, 0.0) == 1.0);
  CHECK(competitive_ratio(3.0, 0.0) == kRatioSentinel);
}

TEST_CASE("chromosome constructors") {
  const auto flat = Chromosome::constant(7.0);
  CHECK(flat.at_fraction(0.3) == 7.0);
  const auto shaped = Chromosome::from_psi(kBounds);
  CHECK(shaped.thresholds[0] == doctest::Approx(psi(0.0005, kBounds)));
  CHECK(shaped.thresholds[999] == doctest::Approx(psi(0.9995, kBounds)));
  CHECK(std::is_sorted(shaped.thresholds.begin(), shaped.thresholds.end()));
}

TEST_CASE("all-zero chromosome is greedy") {
  const auto instances = pool_instances(10, 200, 4, 3);
  const ChromosomePolicy zero(Chromosome::constant(0.0));
  RunOptions options;
  options.record_trace = true;
  for (const auto& inst : instances) {
    const auto a = run_episode(inst, zero, options);
    const auto b = run_episode(inst, GreedyPolicy{}, options);
    for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].served == b.trace[i].served);
  }
}

TEST_CASE("chromosome above U serves nothing") {
  const auto pool = TrainingPool::build(pool_instances(4, 100, 2, 5));
  const auto fit = evaluate_chromosome(Chromosome::constant(10.5), pool);
  CHECK(fit.mean_competitive_ratio == kRatioSentinel);
  for (double r : fit.ratios) CHECK(r == kRatioSentinel);
}

TEST_CASE("sampled psi tracks the analytic engine") {
  // Single harvest, so the jumping and monotone fractions coincide.
  const auto instances = pool_instances(16, 1000, 1, 9);
  const auto pool = TrainingPool::build(instances);
  const auto sampled = evaluate_chromosome(Chromosome::from_psi(kBounds), pool);
  double sum = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    sum += competitive_ratio(pool.opt_values[i],
                             run_episode(instances[i], MonotonePolicy(kBounds)).total_value);
  }
  const double analytic = sum / static_cast<double>(instances.size());
  CHECK(std::abs(sampled.mean_competitive_ratio - analytic) <= 0.01 * analytic);
}

TEST_CASE("span overload agrees with the precomputed pool") {
  const auto instances = pool_instances(3, 80, 2, 4);
  const auto c = Chromosome::constant(7.0);
  CHECK(evaluate_chromosome(c, std::span<const EpisodeInstance>(instances))
            .mean_competitive_ratio ==
        evaluate_chromosome(c, TrainingPool::build(instances)).mean_competitive_ratio);
}

TEST_CASE("config validation") {
  auto c = small_config(1);
  CHECK_NOTHROW(validate(c));
  c.population_size = 1;
  CHECK_THROWS_AS(validate(c), ParameterError);
  c = small_config(1);
  c.elitism_count = c.population_size;
  CHECK_THROWS_AS(validate(c), ParameterError);
  c = small_config(1);
  c.mutation_rate = 1.5;
  CHECK_THROWS_AS(validate(c), ParameterError);
  c = small_config(1);
  c.crossover_rate = -0.1;
  CHECK_THROWS_AS(validate(c), ParameterError);
  CHECK_THROWS_AS(evolve(small_config(1), TrainingPool{}), ParameterError);
}

TEST_CASE("evolution invariants") {
  const auto pool = TrainingPool::build(pool_instances(6, 200, 3, 8));
  SUBCASE("zero generations returns the best initial individual") {
    auto c = small_config(2);
    c.generations = 0;
    const auto result = evolve(c, pool);
    REQUIRE(result.history.size() == 1);
    CHECK(result.history[0] == result.fitness.mean_competitive_ratio);
    CHECK(evaluate_chromosome(result.best, pool).mean_competitive_ratio ==
          result.fitness.mean_competitive_ratio);
  }
  SUBCASE("elitism keeps the best fitness nonincreasing") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto result = evolve(small_config(seed), pool);
      REQUIRE(result.history.size() == 16);
      for (std::size_t g = 1; g < result.history.size(); ++g) {
        CHECK(result.history[g] <= result.history[g - 1]);
      }
      CHECK(result.fitness.mean_competitive_ratio == result.history.back());
      for (double t : result.best.thresholds) {
        CHECK(t >= 0.0);
        CHECK(t <= kBounds.upper);
      }
    }
  }
  SUBCASE("reproducible for a fixed seed") {
    const auto a = evolve(small_config(7), pool);
    const auto b = evolve(small_config(7), pool);
    CHECK(a.best == b.best);
    CHECK(a.history == b.history);
  }
}

TEST_CASE("default training on the daylight scenario stays under 1.55") {
  const auto preset = deterministic_preset("table1");
  const auto result = train_chromosome(preset.generator, campaign_ga_config(preset.bounds, 5),
                                       kCampaignTrainingInstances, {});
  CHECK(result.fitness.mean_competitive_ratio <= 1.55);
  CHECK(result.fitness.mean_competitive_ratio >= 1.0);
}
