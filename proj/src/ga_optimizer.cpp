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

#include "apom/ga_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "apom/errors.hpp"

namespace apom {

double competitive_ratio(double opt_value, double alg_value) {
  if (alg_value > 0.0) return opt_value / alg_value;
  return opt_value > 0.0 ? kRatioSentinel : 1.0;
}

std::size_t bucket_of(double z) {
  if (!(z > 0.0)) return 0;
  const auto i = static_cast<std::size_t>(z * static_cast<double>(kChromosomeBuckets));
  return std::min(i, kChromosomeBuckets - 1);
}

Chromosome Chromosome::constant(double threshold) {
  Chromosome c;
  c.thresholds.fill(threshold);
  return c;
}

Chromosome Chromosome::from_psi(const EfficiencyBounds& bounds) {
  Chromosome c;
  for (std::size_t i = 0; i < kChromosomeBuckets; ++i) {
    const double mid = (static_cast<double>(i) + 0.5) / static_cast<double>(kChromosomeBuckets);
    c.thresholds[i] = psi(mid, bounds);
  }
  return c;
}

Decision ChromosomePolicy::decide(const Observation& obs) const {
  if (!(obs.harvested_so_far > 0.0)) return {false, std::nullopt};
  const double cutoff = chromosome_.at_fraction(obs.used_energy / obs.harvested_so_far);
  return {obs.demand.efficiency() >= cutoff &&
              obs.demand.weight <= obs.state.available_energy,
          cutoff};
}

TrainingPool TrainingPool::build(std::vector<EpisodeInstance> instances,
                                 const OfflineOptions& options) {
  TrainingPool pool;
  pool.opt_values.reserve(instances.size());
  for (const auto& inst : instances) {
    pool.opt_values.push_back(solve_offline(inst, options).total_value);
  }
  pool.instances = std::move(instances);
  return pool;
}

FitnessRecord evaluate_chromosome(const Chromosome& chromosome, const TrainingPool& pool) {
  if (pool.instances.empty()) throw ParameterError("GA training pool is empty");
  const ChromosomePolicy policy(chromosome);
  FitnessRecord record;
  record.ratios.reserve(pool.instances.size());
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    const double alg = run_episode(pool.instances[i], policy).total_value;
    record.ratios.push_back(competitive_ratio(pool.opt_values[i], alg));
  }
  record.mean_competitive_ratio =
      std::accumulate(record.ratios.begin(), record.ratios.end(), 0.0) /
      static_cast<double>(record.ratios.size());
  return record;
}

FitnessRecord evaluate_chromosome(const Chromosome& chromosome,
                                  std::span<const EpisodeInstance> pool) {
  return evaluate_chromosome(
      chromosome, TrainingPool::build(std::vector<EpisodeInstance>(pool.begin(), pool.end())));
}

void validate(const GaConfig& config) {
  if (config.population_size < 2) throw ParameterError("GA population must be >= 2");
  if (config.elitism_count >= config.population_size) {
    throw ParameterError("GA elitism count must be below the population size");
  }
  const auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!rate_ok(config.crossover_rate) || !rate_ok(config.mutation_rate)) {
    throw ParameterError("GA rates must lie in [0,1]");
  }
  if (config.mutation_scale < 0.0) throw ParameterError("GA mutation scale must be >= 0");
  if (config.tournament_size < 1) throw ParameterError("GA tournament size must be >= 1");
  validate(config.bounds);
}

namespace {

struct Individual {
  Chromosome genes;
  FitnessRecord fitness;
};

void evaluate_all(std::vector<Individual>& population, std::size_t first,
                  const TrainingPool& pool, Execution execution) {
  const auto n = static_cast<std::int64_t>(population.size());
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = static_cast<std::int64_t>(first); i < n; ++i) {
      auto& ind = population[static_cast<std::size_t>(i)];
      ind.fitness = evaluate_chromosome(ind.genes, pool);
    }
  } else {
    for (std::int64_t i = static_cast<std::int64_t>(first); i < n; ++i) {
      auto& ind = population[static_cast<std::size_t>(i)];
      ind.fitness = evaluate_chromosome(ind.genes, pool);
    }
  }
}

// Indices ordered best first; ties keep population order.
std::vector<std::size_t> ranking(const std::vector<Individual>& population) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return population[a].fitness.mean_competitive_ratio <
           population[b].fitness.mean_competitive_ratio;
  });
  return order;
}

std::size_t tournament(const std::vector<Individual>& population, std::size_t size,
                       std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  std::size_t best = pick(gen);
  for (std::size_t i = 1; i < size; ++i) {
    const std::size_t challenger = pick(gen);
    if (population[challenger].fitness.mean_competitive_ratio <
        population[best].fitness.mean_competitive_ratio) {
      best = challenger;
    }
  }
  return best;
}

}  // namespace

GaResult evolve(const GaConfig& config, const TrainingPool& pool, Execution execution) {
  validate(config);
  if (pool.instances.empty()) throw ParameterError("GA training pool is empty");
  const RandomSource root(config.seed);
  const double lo = config.bounds.lower / std::numbers::e;
  const double hi = config.bounds.upper;

  std::vector<Individual> population(config.population_size);
  {
    const RandomSource init = root.derive(0);
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (i == 0 && config.seed_with_psi) {
        population[i].genes = Chromosome::from_psi(config.bounds);
        continue;
      }
      auto gen = init.derive(i).engine();
      std::uniform_real_distribution<double> gene(lo, hi);
      for (auto& t : population[i].genes.thresholds) t = gene(gen);
    }
  }
  evaluate_all(population, 0, pool, execution);

  GaResult result;
  auto order = ranking(population);
  result.best = population[order.front()].genes;
  result.fitness = population[order.front()].fitness;
  result.history.push_back(result.fitness.mean_competitive_ratio);

  for (std::size_t g = 1; g <= config.generations; ++g) {
    const RandomSource gen_stream = root.derive(g);
    std::vector<Individual> next(config.population_size);
    for (std::size_t i = 0; i < config.elitism_count; ++i) next[i] = population[order[i]];
    for (std::size_t i = config.elitism_count; i < next.size(); ++i) {
      auto gen = gen_stream.derive(i).engine();
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::normal_distribution<double> bump(0.0, config.mutation_scale);
      const auto& a = population[tournament(population, config.tournament_size, gen)].genes;
      const auto& b = population[tournament(population, config.tournament_size, gen)].genes;
      Chromosome child = a;
      if (unit(gen) < config.crossover_rate) {
        for (std::size_t j = 0; j < kChromosomeBuckets; ++j) {
          if (unit(gen) < 0.5) child.thresholds[j] = b.thresholds[j];
        }
      }
      for (auto& t : child.thresholds) {
        if (unit(gen) < config.mutation_rate) t = std::clamp(t + bump(gen), 0.0, hi);
      }
      next[i].genes = child;
    }
    population = std::move(next);
    evaluate_all(population, config.elitism_count, pool, execution);

    order = ranking(population);
    const auto& best = population[order.front()];
    if (best.fitness.mean_competitive_ratio < result.fitness.mean_competitive_ratio) {
      result.best = best.genes;
      result.fitness = best.fitness;
    }
    result.history.push_back(best.fitness.mean_competitive_ratio);
  }
  return result;
}

}  // namespace apom
