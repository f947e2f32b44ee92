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

#ifndef APOM_SERIALIZATION_HPP_
#define APOM_SERIALIZATION_HPP_

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "apom/evaluation.hpp"
#include "apom/fuzzy_engine.hpp"
#include "apom/ga_optimizer.hpp"
#include "apom/instance.hpp"
#include "apom/offline_solver.hpp"
#include "apom/stochastic_dp.hpp"

namespace apom {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; the CSV writers use it for every real.
std::string format_number(double x);

// {horizon, users: [{value, weight}], schedule: [{slot, amount}]}, plus
// "types" for sampled stochastic episodes.
Json to_json(const EpisodeInstance& instance);
EpisodeInstance instance_from_json(const Json& doc);

Json to_json(const OfflineSolution& solution);

Json to_json(const DpConfig& config);
DpConfig dp_config_from_json(const Json& doc);
// values[n-1][e][k] for n = 1..N+1.
Json to_json(const ValueTable& table);
// eta[n-1][k] for n = 1..N.
Json to_json(const ThresholdTable& table);
ThresholdTable threshold_table_from_json(const Json& doc);

// A bare array of 1000 reals.
Json to_json(const Chromosome& chromosome);
Chromosome chromosome_from_json(const Json& doc);

// {inputs: {closeness: [5 x [a,b,c,d]], fullness: [...]}, output: [...],
//  rules: [[closeness, fullness, threshold] x 25]} with label names.
Json to_json(const FuzzySystem& system);
FuzzySystem fuzzy_system_from_json(const Json& doc);

Json to_json(const PolicySummary& summary);
// Table-style summary: one entry per policy with the six aggregate columns.
Json to_json(const EvaluationReport& report);
Json to_json(const StochasticReport& report);

// trial,policy,alg_value,opt_value,ratio
void write_trials_csv(const EvaluationReport& report, std::ostream& out);
// slot,<policy>... mean cumulative value after each slot.
void write_trajectories_csv(const StochasticReport& report, std::ostream& out);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace apom

#endif  // APOM_SERIALIZATION_HPP_
