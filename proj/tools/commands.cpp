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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <new>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "apom/errors.hpp"
#include "apom/presets.hpp"
#include "run_config.hpp"

namespace apom::cli {
namespace {

struct Command {
  CLI::App* app = nullptr;
  RunConfig config;
  std::string config_path;
  std::map<std::string, std::string> text;
  std::map<std::string, bool> toggles;
  std::map<std::string, CLI::Option*> options;
  std::function<int(const RunConfig&, std::ostream&)> run;
};

std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string dashed(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

std::uint64_t seed_of(const RunConfig& cfg) {
  const std::int64_t seed = cfg.integer("seed");
  if (seed < 0) throw ParameterError("--seed must be >= 0");
  return static_cast<std::uint64_t>(seed);
}

EfficiencyBounds bounds_of(const RunConfig& cfg) {
  const auto b = cfg.reals("bounds");
  if (b.size() != 2) throw ParameterError("--bounds takes L,U");
  EfficiencyBounds bounds{b[0], b[1]};
  validate(bounds);
  return bounds;
}

HorizonFactor horizon_factor_of(const RunConfig& cfg) {
  const std::string f = cfg.text("horizon_factor");
  if (f == "inclusive") return HorizonFactor::kRemainingInclusive;
  if (f == "exclusive") return HorizonFactor::kRemainingExclusive;
  throw ParameterError("--horizon-factor takes inclusive or exclusive");
}

// Training generator: the scenario's own unless training_harvests re-spreads
// the same total energy over a different number of even harvests.
GeneratorParams training_generator(const RunConfig& cfg, GeneratorParams params) {
  const std::int64_t harvests = cfg.integer("training_harvests");
  if (harvests < 0) throw ParameterError("--training-harvests must be >= 0");
  if (harvests > 0) {
    params.schedule = even_schedule(params.n_users, params.schedule.total(),
                                    static_cast<std::size_t>(harvests));
  }
  return params;
}

void apply_threads(const RunConfig& cfg) {
  const std::int64_t threads = cfg.integer("threads");
  if (threads < 0) throw ParameterError("--threads must be >= 0");
  if (threads > 0) set_thread_count(static_cast<int>(threads));
}

void emit(const std::string& path, const Json& doc, std::ostream& out) {
  const std::string body = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << body;
  } else {
    write_text_file(path, body);
  }
}

UserTypeSet types_of(const Json& list) {
  std::vector<UserType> types;
  for (const auto& t : list) {
    types.push_back({{t.at(0).get<double>(), t.at(1).get<double>()}, t.at(2).get<double>()});
  }
  return UserTypeSet::make(std::move(types));
}

Json type_list(const UserTypeSet& types) {
  Json list = Json::array();
  for (const auto& t : types.types()) {
    list.push_back(Json::array({t.demand.value, t.demand.weight, t.probability}));
  }
  return list;
}

// ---- generate --------------------------------------------------------------

void declare_generate(RunConfig& c) {
  c.declare("n", 1000, Kind::kInt, "number of users (slots)");
  c.declare("bounds", Json::array({6.0, 10.0}), Kind::kRealList, "efficiency range L,U");
  c.declare("weights", Json::array({1.0, 10.0}), Kind::kRealList, "weight range lo,hi");
  c.declare("weight_quantum", 1.0, Kind::kReal, "weight grid step (0 = continuous)");
  c.declare("capacity", 2000.0, Kind::kReal, "total harvested energy");
  c.declare("harvests", 1, Kind::kInt, "number of evenly spaced harvests");
  c.declare("seed", 0, Kind::kInt, "random seed");
  c.declare("out", "instance.json", Kind::kText, "output path (- for stdout)", false);
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  const std::int64_t n = c.integer("n");
  const std::int64_t harvests = c.integer("harvests");
  if (n < 0) throw ParameterError("--n must be >= 0");
  if (harvests < 1) throw ParameterError("--harvests must be >= 1");
  const auto bounds = bounds_of(c);
  const auto weights = c.reals("weights");
  if (weights.size() != 2) throw ParameterError("--weights takes lo,hi");
  const auto schedule =
      even_schedule(n, c.real("capacity"), static_cast<std::size_t>(harvests));
  const auto instance = generate_deterministic_instance(
      n, {bounds.lower, bounds.upper}, {weights[0], weights[1]}, schedule,
      RandomSource(seed_of(c)), c.real("weight_quantum"));
  emit(c.text("out"), to_json(instance), out);
  if (c.text("out") != "-") {
    out << "generated " << n << " users, " << schedule.harvest_count() << " harvest(s), "
        << format_number(schedule.total()) << " energy -> " << c.text("out") << "\n";
  }
  return kExitOk;
}

// ---- offline-opt -----------------------------------------------------------

void declare_offline(RunConfig& c) {
  c.declare("instance", "", Kind::kText, "instance JSON path");
  c.declare("scale", 1, Kind::kInt, "integer energy units per input unit");
  c.declare("out", "", Kind::kText, "solution path (default: none)", false);
}

int cmd_offline(const RunConfig& c, std::ostream& out) {
  if (c.text("instance").empty()) throw ParameterError("--instance is required");
  const auto instance = instance_from_json(read_json_file(c.text("instance")));
  OfflineOptions options;
  options.scale = c.integer("scale");
  const auto solution = solve_offline(instance, options);
  if (!c.text("out").empty()) emit(c.text("out"), to_json(solution), out);
  std::size_t served = 0;
  for (bool s : solution.selection) served += s ? 1 : 0;
  out << "offline optimum " << format_number(solution.total_value) << " (served " << served
      << " of " << instance.users.size() << ", energy "
      << format_number(solution.total_weight_used) << ")\n";
  return kExitOk;
}

// ---- dp-solve --------------------------------------------------------------

void declare_dp(RunConfig& c) {
  c.declare("preset", "", Kind::kText, "fig4 | fig5 | fig6 | fig7 (explicit keys override)");
  c.declare("n_slots", 100, Kind::kInt, "horizon N");
  c.declare("q", 0.5, Kind::kReal, "unit harvest probability per slot");
  c.declare("e0", 5, Kind::kInt, "initial battery level");
  c.declare("energy_cap", -1, Kind::kInt, "battery cap E (-1: e0 + N)");
  c.declare("types", Json::array({Json::array({5.0, 1.0, 0.3}), Json::array({10.0, 1.0, 0.7})}),
            Kind::kTypeList, "user types value:weight:probability,...");
  c.declare("verify", false, Kind::kBool, "check against exhaustive policy enumeration");
  c.declare("include_values", false, Kind::kBool, "also write the full value table");
  c.declare("out", "dp_tables.json", Kind::kText, "output path (- for stdout)", false);
}

int cmd_dp(const RunConfig& c, std::ostream& out) {
  DpConfig config;
  std::int64_t e0 = c.integer("e0");
  std::int64_t cap = c.integer("energy_cap");
  if (!c.text("preset").empty()) {
    const auto preset = stochastic_preset(c.text("preset"));
    config = preset.dp;
    if (!c.is_set("e0")) e0 = preset.e0;
    if (!c.is_set("energy_cap")) cap = -1;
  }
  if (c.text("preset").empty() || c.is_set("n_slots")) config.n_slots = c.integer("n_slots");
  if (c.text("preset").empty() || c.is_set("q")) config.q = c.real("q");
  if (c.text("preset").empty() || c.is_set("types")) config.types = types_of(c.raw("types"));
  if (e0 < 0) throw ParameterError("--e0 must be >= 0");
  config.energy_cap = cap < 0 ? default_energy_cap(e0, config.n_slots) : cap;
  validate(config);

  const auto table = build_value_table(config);
  const auto thresholds = extract_thresholds(table, config);
  const auto monotone = check_threshold_monotonicity(thresholds);
  if (!monotone.pass) {
    throw ContractError("thresholds are not nonincreasing in the slot index");
  }
  const double value = expected_value(table, config, e0);
  out << "expected optimal value V*(1, e0=" << e0 << ") = " << format_number(value) << "\n";
  if (c.flag("verify")) {
    const double oracle = exhaustive_policy_oracle(config, e0);
    const bool match = std::abs(oracle - value) <= kPropertyTolerance * std::max(1.0, oracle);
    out << "exhaustive policy oracle = " << format_number(oracle)
        << (match ? " (match)" : " (MISMATCH)") << "\n";
    if (!match) return kExitInternal;
  }

  Json doc{{"config", c.provenance()},
           {"dp", to_json(config)},
           {"e0", e0},
           {"expected_value", value},
           {"thresholds", to_json(thresholds)}};
  if (c.flag("include_values")) doc["values"] = to_json(table);
  emit(c.text("out"), doc, out);
  return kExitOk;
}

// ---- simulate --------------------------------------------------------------

void declare_simulate(RunConfig& c) {
  c.declare("instance", "", Kind::kText, "instance JSON path");
  c.declare("policy", "greedy", Kind::kText,
            "greedy | conservative | expected-threshold | dp | monotone | jumping | ga | "
            "fuzzy | offline-replay");
  c.declare("foresight", "", Kind::kText,
            "full | none: Psi threshold with monotone or jumping fraction (sets --policy)");
  c.declare("bounds", Json::array({6.0, 10.0}), Kind::kRealList, "efficiency range L,U");
  c.declare("chromosome", "", Kind::kText, "GA chromosome JSON (policy ga)");
  c.declare("fuzzy", "", Kind::kText, "fuzzy system JSON (policy fuzzy; default table)");
  c.declare("dp_tables", "", Kind::kText, "dp-solve output (policies dp, expected-threshold)");
  c.declare("horizon_factor", "inclusive", Kind::kText,
            "expected-threshold slot count: inclusive (N-n+1) | exclusive (N-n)");
  c.declare("offline", true, Kind::kBool, "also solve the offline optimum");
  c.declare("trace", "", Kind::kText, "per-slot decision CSV path", false);
  c.declare("out", "-", Kind::kText, "result JSON path (- for stdout)", false);
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  if (c.text("instance").empty()) throw ParameterError("--instance is required");
  const auto instance = instance_from_json(read_json_file(c.text("instance")));
  std::string name = c.text("policy");
  if (const std::string foresight = c.text("foresight"); !foresight.empty()) {
    if (foresight != "full" && foresight != "none") {
      throw ParameterError("--foresight takes full or none");
    }
    const std::string implied = foresight == "full" ? "monotone" : "jumping";
    if (c.is_set("policy") && name != implied) {
      throw ParameterError("--foresight " + foresight + " conflicts with --policy " + name);
    }
    name = implied;
  }

  PolicyContext ctx;
  ctx.bounds = bounds_of(c);
  ctx.horizon_factor = horizon_factor_of(c);
  if (!c.text("chromosome").empty()) {
    ctx.chromosome = chromosome_from_json(read_json_file(c.text("chromosome")));
  }
  if (!c.text("fuzzy").empty()) {
    ctx.fuzzy = fuzzy_system_from_json(read_json_file(c.text("fuzzy")));
  }
  if (!c.text("dp_tables").empty()) {
    const Json doc = read_json_file(c.text("dp_tables"));
    const DpConfig dp = dp_config_from_json(doc.at("dp"));
    ctx.types = dp.types;
    ctx.q = dp.q;
    ctx.thresholds =
        std::make_shared<const ThresholdTable>(threshold_table_from_json(doc.at("thresholds")));
  }
  if ((name == "dp" || name == "expected-threshold") && instance.type_indices.empty()) {
    throw ParameterError("policy '" + name + "' needs an instance with user types");
  }
  if (name == "conservative" && !ctx.types) {
    double best = 0.0;
    for (const auto& u : instance.users) best = std::max(best, u.efficiency());
    ctx.best_efficiency = best;
  }

  std::optional<OfflineSolution> offline;
  if (c.flag("offline") || name == "offline-replay") offline = solve_offline(instance);
  std::unique_ptr<Policy> policy = name == "offline-replay"
                                       ? std::make_unique<ReplayPolicy>(offline->selection)
                                       : make_policy(name, ctx);

  RunOptions options;
  options.record_trace = !c.text("trace").empty();
  const auto result = run_episode(instance, *policy, options);

  Json doc{{"config", c.provenance()},
           {"policy", name},
           {"total_value", result.total_value},
           {"total_weight", result.total_weight}};
  if (offline) {
    doc["offline_value"] = offline->total_value;
    doc["competitive_ratio"] = competitive_ratio(offline->total_value, result.total_value);
  }
  if (options.record_trace) {
    std::ostringstream csv;
    csv << "slot,type,value,weight,energy_before,served,threshold\n";
    for (const auto& r : result.trace) {
      csv << r.slot << ',' << r.type_index << ',' << format_number(r.demand.value) << ','
          << format_number(r.demand.weight) << ',' << format_number(r.energy_before) << ','
          << (r.served ? 1 : 0) << ',' << (r.threshold ? format_number(*r.threshold) : "")
          << '\n';
    }
    write_text_file(c.text("trace"), csv.str());
  }
  emit(c.text("out"), doc, out);
  return kExitOk;
}

// ---- compare ---------------------------------------------------------------

void declare_compare(RunConfig& c) {
  c.declare("preset", "table1", Kind::kText, "table1 | table2 | fig4 | fig5 | fig6 | fig7");
  c.declare("trials", 0, Kind::kInt, "trials or episodes (0: preset default)");
  c.declare("seed", 0, Kind::kInt, "random seed");
  c.declare("policies", Json::array(), Kind::kTextList, "policy list (empty: preset default)");
  c.declare("chromosome", "", Kind::kText, "GA chromosome JSON (default: train one)");
  c.declare("training_harvests", 0, Kind::kInt,
            "GA training harvest count (0: share the scenario schedule)");
  c.declare("horizon_factor", "inclusive", Kind::kText,
            "expected-threshold slot count: inclusive (N-n+1) | exclusive (N-n)");
  c.declare("threads", 0, Kind::kInt, "worker threads (0: runtime default)", false);
  c.declare("out_dir", ".", Kind::kText, "directory for CSV and summary.json", false);
}

void print_deterministic(const EvaluationReport& report, std::ostream& out) {
  out << "policy        avg_ratio  worst_ratio  best_ratio  avg_value  invalid\n";
  for (const auto& s : report.policies) {
    char line[160];
    std::snprintf(line, sizeof line, "%-12s  %9s  %11s  %10s  %9s  %7lld\n", s.policy.c_str(),
                  fixed(s.average_ratio).c_str(), fixed(s.worst_ratio).c_str(),
                  fixed(s.best_ratio).c_str(), fixed(s.average_total_value, 2).c_str(),
                  static_cast<long long>(s.invalid_trials));
    out << line;
  }
}

int compare_deterministic(const RunConfig& c, std::ostream& out) {
  const std::string preset_name = c.text("preset");
  const auto preset = deterministic_preset(preset_name);
  CampaignConfig campaign;
  campaign.policies = c.texts("policies").empty() ? preset.policies : c.texts("policies");
  campaign.generator = preset.generator;
  campaign.trials = c.integer("trials") > 0 ? c.integer("trials") : preset.trials;
  campaign.seed = seed_of(c);
  campaign.context.bounds = preset.bounds;

  Json ga_info = nullptr;
  const bool wants_ga =
      std::find(campaign.policies.begin(), campaign.policies.end(), "ga") !=
      campaign.policies.end();
  if (wants_ga && !c.text("chromosome").empty()) {
    campaign.context.chromosome = chromosome_from_json(read_json_file(c.text("chromosome")));
  } else if (wants_ga) {
    const GaConfig ga = campaign_ga_config(preset.bounds, campaign.seed);
    const auto trained = train_chromosome(training_generator(c, preset.generator), ga,
                                          kCampaignTrainingInstances, campaign.offline);
    campaign.context.chromosome = trained.best;
    ga_info = {{"population", ga.population_size},
               {"generations", ga.generations},
               {"training_instances", kCampaignTrainingInstances},
               {"best_training_fitness", trained.fitness.mean_competitive_ratio}};
  }

  const auto report = run_campaign(campaign);
  const std::filesystem::path dir(c.text("out_dir"));
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  write_trials_csv(report, csv);
  write_text_file((dir / "trials.csv").string(), csv.str());

  Json summary{{"config", c.provenance()},
               {"scenario",
                {{"users", campaign.generator.n_users},
                 {"efficiency_bounds", {preset.bounds.lower, preset.bounds.upper}},
                 {"weight_range",
                  {campaign.generator.weight_range.first, campaign.generator.weight_range.second}},
                 {"harvests", to_json(EpisodeInstance{0, {}, campaign.generator.schedule, {}})
                                  .at("schedule")},
                 {"trials", campaign.trials},
                 {"policies", campaign.policies}}},
               {"report", to_json(report)}};
  if (!ga_info.is_null()) summary["ga_training"] = ga_info;
  write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");

  print_deterministic(report, out);
  out << "offline optimum average " << fixed(report.offline.average_total_value, 2)
      << "; ratio bound ln(U/L)+1 = " << fixed(report.bounds.monotone_bound) << "\n";
  return kExitOk;
}

int compare_stochastic(const RunConfig& c, std::ostream& out) {
  const auto preset = stochastic_preset(c.text("preset"));
  StochasticCampaign campaign;
  campaign.dp = preset.dp;
  campaign.e0 = preset.e0;
  campaign.episodes = c.integer("trials") > 0 ? c.integer("trials") : preset.episodes;
  campaign.seed = seed_of(c);
  if (!c.texts("policies").empty()) campaign.policies = c.texts("policies");
  campaign.horizon_factor = horizon_factor_of(c);
  campaign.record_trajectories = true;

  const auto report = stochastic_comparison(campaign);
  const std::filesystem::path dir(c.text("out_dir"));
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  write_trajectories_csv(report, csv);
  write_text_file((dir / "trajectories.csv").string(), csv.str());

  Json summary{{"config", c.provenance()},
               {"scenario",
                {{"n_slots", preset.dp.n_slots},
                 {"q", preset.dp.q},
                 {"e0", preset.e0},
                 {"energy_cap", preset.dp.energy_cap},
                 {"types", type_list(preset.dp.types)}}},
               {"report", to_json(report)}};
  write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");

  out << "policy              mean        std_error\n";
  for (const auto& s : report.policies) {
    char line[128];
    std::snprintf(line, sizeof line, "%-18s  %10s  %9s\n", s.policy.c_str(),
                  fixed(s.mean, 3).c_str(), fixed(s.std_error, 3).c_str());
    out << line;
  }
  out << "DP expected value " << fixed(report.dp_expected_value, 3) << "\n";
  return kExitOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  apply_threads(c);
  if (is_stochastic_preset(c.text("preset"))) return compare_stochastic(c, out);
  return compare_deterministic(c, out);
}

// ---- ga-train --------------------------------------------------------------

void declare_ga(RunConfig& c) {
  const GaConfig d;
  c.declare("preset", "table1", Kind::kText, "instance generator: table1 | table2");
  c.declare("pool", 32, Kind::kInt, "training instances");
  c.declare("training_harvests", 0, Kind::kInt,
            "harvest count of training instances (0: the preset's schedule)");
  c.declare("population", static_cast<std::int64_t>(d.population_size), Kind::kInt,
            "population size");
  c.declare("generations", static_cast<std::int64_t>(d.generations), Kind::kInt,
            "generations");
  c.declare("crossover", d.crossover_rate, Kind::kReal, "crossover rate");
  c.declare("mutation", d.mutation_rate, Kind::kReal, "per-gene mutation rate");
  c.declare("mutation_scale", d.mutation_scale, Kind::kReal, "mutation standard deviation");
  c.declare("elitism", static_cast<std::int64_t>(d.elitism_count), Kind::kInt,
            "elite individuals copied each generation");
  c.declare("tournament", static_cast<std::int64_t>(d.tournament_size), Kind::kInt,
            "tournament size");
  c.declare("seed", 0, Kind::kInt, "random seed");
  c.declare("threads", 0, Kind::kInt, "worker threads (0: runtime default)", false);
  c.declare("history", "", Kind::kText, "per-generation best fitness CSV path", false);
  c.declare("out", "chromosome.json", Kind::kText, "chromosome output path", false);
}

std::size_t count_of(const RunConfig& c, const std::string& key) {
  const std::int64_t v = c.integer(key);
  if (v < 0) throw ParameterError("--" + dashed(key) + " must be >= 0");
  return static_cast<std::size_t>(v);
}

int cmd_ga(const RunConfig& c, std::ostream& out) {
  apply_threads(c);
  const auto preset = deterministic_preset(c.text("preset"));
  GaConfig ga;
  ga.population_size = count_of(c, "population");
  ga.generations = count_of(c, "generations");
  ga.crossover_rate = c.real("crossover");
  ga.mutation_rate = c.real("mutation");
  ga.mutation_scale = c.real("mutation_scale");
  ga.elitism_count = count_of(c, "elitism");
  ga.tournament_size = count_of(c, "tournament");
  ga.bounds = preset.bounds;
  ga.seed = seed_of(c);
  const auto result =
      train_chromosome(training_generator(c, preset.generator), ga, count_of(c, "pool"), {});
  emit(c.text("out"), to_json(result.best), out);
  if (!c.text("history").empty()) {
    std::ostringstream csv;
    csv << "generation,best_fitness\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
      csv << g << ',' << format_number(result.history[g]) << '\n';
    }
    write_text_file(c.text("history"), csv.str());
  }
  out << "best mean competitive ratio " << fixed(result.fitness.mean_competitive_ratio)
      << " after " << ga.generations << " generations -> " << c.text("out") << "\n";
  return kExitOk;
}

// ---- wiring ----------------------------------------------------------------

void add_command(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands,
                 const std::string& name, const std::string& description,
                 void (*declare)(RunConfig&), int (*run)(const RunConfig&, std::ostream&)) {
  auto cmd = std::make_unique<Command>();
  cmd->app = app.add_subcommand(name, description);
  declare(cmd->config);
  cmd->app->add_option("--config", cmd->config_path, "JSON file of settings (flags override)");
  for (const auto& e : cmd->config.entries()) {
    const std::string flag = "--" + dashed(e.key);
    if (e.kind == Kind::kBool) {
      cmd->options[e.key] = cmd->app->add_flag(flag, cmd->toggles[e.key], e.help);
    } else {
      cmd->options[e.key] = cmd->app->add_option(flag, cmd->text[e.key], e.help);
    }
  }
  cmd->run = run;
  commands.push_back(std::move(cmd));
}

int dispatch(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands,
             std::ostream& out) {
  for (auto& cmd : commands) {
    if (!cmd->app->parsed()) continue;
    if (!cmd->config_path.empty()) cmd->config.apply_file(read_json_file(cmd->config_path));
    for (const auto& e : cmd->config.entries()) {
      if (cmd->options.at(e.key)->count() == 0) continue;
      if (e.kind == Kind::kBool) {
        cmd->config.apply_flag(e.key, cmd->toggles.at(e.key) ? "true" : "false");
      } else {
        cmd->config.apply_flag(e.key, cmd->text.at(e.key));
      }
    }
    return cmd->run(cmd->config, out);
  }
  out << app.help();
  return kExitUsage;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-harvesting admission policy simulator"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;
  add_command(app, commands, "generate", "write a random deterministic instance",
              declare_generate, cmd_generate);
  add_command(app, commands, "offline-opt", "solve an instance offline", declare_offline,
              cmd_offline);
  add_command(app, commands, "dp-solve", "build stochastic DP value and threshold tables",
              declare_dp, cmd_dp);
  add_command(app, commands, "simulate", "run one policy on an instance", declare_simulate,
              cmd_simulate);
  add_command(app, commands, "compare", "run a preset campaign and write reports",
              declare_compare, cmd_compare);
  add_command(app, commands, "ga-train", "evolve a threshold chromosome", declare_ga, cmd_ga);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return dispatch(app, commands, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return kExitResource;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace apom::cli
