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

#ifndef APOM_GA_OPTIMIZER_HPP_
#define APOM_GA_OPTIMIZER_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "apom/execution.hpp"
#include "apom/instance.hpp"
#include "apom/offline_solver.hpp"
#include "apom/policies.hpp"
#include "apom/threshold_engines.hpp"

namespace apom {

inline constexpr std::size_t kChromosomeBuckets = 1000;

// Ratio recorded when an online policy earns nothing but OPT > 0.
inline constexpr double kRatioSentinel = 1e6;

// OPT / ALG with the sentinel for ALG = 0 < OPT and 1 when both are zero.
double competitive_ratio(double opt_value, double alg_value);

// Bucket i (0-based) covers fractions [i/1000, (i+1)/1000); z = 1 maps to the
// last bucket.
std::size_t bucket_of(double z);

// Piecewise-constant efficiency threshold over the fill fraction.
struct Chromosome {
  std::array<double, kChromosomeBuckets> thresholds{};

  static Chromosome constant(double threshold);
  // Psi sampled at bucket midpoints.
  static Chromosome from_psi(const EfficiencyBounds& bounds);

  double at_fraction(double z) const { return thresholds[bucket_of(z)]; }

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

// Serve iff v/w >= t[bucket(z)] and w <= e_n, with z measured against the
// energy harvested so far.
class ChromosomePolicy final : public Policy {
 public:
  explicit ChromosomePolicy(const Chromosome& chromosome) : chromosome_(chromosome) {}
  std::string name() const override { return "ga"; }
  Decision decide(const Observation& obs) const override;

 private:
  Chromosome chromosome_;
};

struct FitnessRecord {
  double mean_competitive_ratio = 0.0;
  std::vector<double> ratios;
};

// Instances paired with their offline optima, computed once.
struct TrainingPool {
  std::vector<EpisodeInstance> instances;
  std::vector<double> opt_values;

  static TrainingPool build(std::vector<EpisodeInstance> instances,
                            const OfflineOptions& options = {});
};

FitnessRecord evaluate_chromosome(const Chromosome& chromosome, const TrainingPool& pool);
FitnessRecord evaluate_chromosome(const Chromosome& chromosome,
                                  std::span<const EpisodeInstance> pool);

struct GaConfig {
  std::size_t population_size = 50;
  std::size_t generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate = 0.01;
  double mutation_scale = 0.5;
  std::size_t elitism_count = 2;
  std::size_t tournament_size = 3;
  EfficiencyBounds bounds{6.0, 10.0};
  bool seed_with_psi = true;
  std::uint64_t seed = 0;
};

void validate(const GaConfig& config);

struct GaResult {
  Chromosome best;
  FitnessRecord fitness;
  std::vector<double> history;  // best fitness after each generation, gen 0 first
};

// Tournament selection, uniform crossover, Gaussian mutation clamped to
// [0, U], elitism. Returns the best chromosome ever seen.
GaResult evolve(const GaConfig& config, const TrainingPool& pool,
                Execution execution = Execution::kParallel);

}  // namespace apom

#endif  // APOM_GA_OPTIMIZER_HPP_
