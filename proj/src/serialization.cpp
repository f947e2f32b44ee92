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

#include "apom/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "apom/errors.hpp"

namespace apom {
namespace {

template <typename F>
auto parse_guarded(const char* what, F&& parse) {
  try {
    return parse();
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed ") + what + ": " + ex.what());
  }
}

Json to_json(const Trapezoid& t) { return Json::array({t.a, t.b, t.c, t.d}); }

MembershipSet membership_from_json(const Json& doc, const char* what) {
  if (!doc.is_array() || doc.size() != kFuzzyLevels) {
    throw ParameterError(std::string(what) + " needs exactly 5 trapezoids");
  }
  MembershipSet set;
  for (std::size_t i = 0; i < kFuzzyLevels; ++i) {
    const auto& t = doc.at(i);
    if (!t.is_array() || t.size() != 4) {
      throw ParameterError(std::string(what) + " trapezoids are [a, b, c, d] arrays");
    }
    set[i] = {t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>(),
              t.at(3).get<double>()};
  }
  return set;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const EpisodeInstance& instance) {
  Json users = Json::array();
  for (const auto& u : instance.users) users.push_back({{"value", u.value}, {"weight", u.weight}});
  Json schedule = Json::array();
  for (const auto& a : instance.schedule.arrivals()) {
    schedule.push_back({{"slot", a.slot}, {"amount", a.amount}});
  }
  Json doc{{"horizon", instance.horizon}, {"users", users}, {"schedule", schedule}};
  if (!instance.type_indices.empty()) doc["types"] = instance.type_indices;
  return doc;
}

EpisodeInstance instance_from_json(const Json& doc) {
  return parse_guarded("instance", [&] {
    EpisodeInstance inst;
    inst.horizon = doc.at("horizon").get<std::int64_t>();
    for (const auto& u : doc.at("users")) {
      inst.users.push_back({u.at("value").get<double>(), u.at("weight").get<double>()});
    }
    std::vector<EnergyArrival> arrivals;
    for (const auto& a : doc.at("schedule")) {
      arrivals.push_back({a.at("slot").get<std::int64_t>(), a.at("amount").get<double>()});
    }
    inst.schedule = EnergyArrivalSchedule(std::move(arrivals));
    if (doc.contains("types")) inst.type_indices = doc.at("types").get<std::vector<int>>();
    validate(inst);
    return inst;
  });
}

Json to_json(const OfflineSolution& solution) {
  std::vector<int> selection(solution.selection.begin(), solution.selection.end());
  return {{"total_value", solution.total_value},
          {"total_weight_used", solution.total_weight_used},
          {"selection", selection}};
}

Json to_json(const DpConfig& config) {
  Json types = Json::array();
  for (const auto& t : config.types.types()) {
    types.push_back({{"value", t.demand.value},
                     {"weight", t.demand.weight},
                     {"probability", t.probability}});
  }
  return {{"n_slots", config.n_slots},
          {"q", config.q},
          {"energy_cap", config.energy_cap},
          {"types", types}};
}

DpConfig dp_config_from_json(const Json& doc) {
  return parse_guarded("dp config", [&] {
    DpConfig config;
    config.n_slots = doc.at("n_slots").get<std::int64_t>();
    config.q = doc.at("q").get<double>();
    config.energy_cap = doc.at("energy_cap").get<std::int64_t>();
    std::vector<UserType> types;
    for (const auto& t : doc.at("types")) {
      types.push_back({{t.at("value").get<double>(), t.at("weight").get<double>()},
                       t.at("probability").get<double>()});
    }
    config.types = UserTypeSet::make(std::move(types));
    validate(config);
    return config;
  });
}

Json to_json(const ValueTable& table) {
  Json rows = Json::array();
  for (std::int64_t n = 1; n <= table.n_slots() + 1; ++n) {
    Json by_energy = Json::array();
    for (std::int64_t e = 0; e <= table.energy_cap(); ++e) {
      Json by_type = Json::array();
      for (std::size_t k = 0; k < table.n_types(); ++k) by_type.push_back(table.at(n, e, k));
      by_energy.push_back(std::move(by_type));
    }
    rows.push_back(std::move(by_energy));
  }
  return {{"n_slots", table.n_slots()},
          {"energy_cap", table.energy_cap()},
          {"n_types", table.n_types()},
          {"values", rows}};
}

Json to_json(const ThresholdTable& table) {
  Json rows = Json::array();
  for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
    Json row = Json::array();
    for (std::size_t k = 0; k < table.n_types(); ++k) row.push_back(table.at(n, k));
    rows.push_back(std::move(row));
  }
  return {{"n_slots", table.n_slots()},
          {"energy_cap", table.energy_cap()},
          {"n_types", table.n_types()},
          {"eta", rows}};
}

ThresholdTable threshold_table_from_json(const Json& doc) {
  return parse_guarded("threshold table", [&] {
    ThresholdTable table(doc.at("n_slots").get<std::int64_t>(),
                         doc.at("energy_cap").get<std::int64_t>(),
                         doc.at("n_types").get<std::size_t>());
    const auto& rows = doc.at("eta");
    if (rows.size() != static_cast<std::size_t>(table.n_slots())) {
      throw ParameterError("threshold table row count differs from n_slots");
    }
    for (std::int64_t n = 1; n <= table.n_slots(); ++n) {
      const auto& row = rows.at(static_cast<std::size_t>(n - 1));
      for (std::size_t k = 0; k < table.n_types(); ++k) {
        table.at(n, k) = row.at(k).get<std::int64_t>();
      }
    }
    return table;
  });
}

Json to_json(const Chromosome& chromosome) {
  return Json(std::vector<double>(chromosome.thresholds.begin(), chromosome.thresholds.end()));
}

Chromosome chromosome_from_json(const Json& doc) {
  return parse_guarded("chromosome", [&] {
    if (!doc.is_array() || doc.size() != kChromosomeBuckets) {
      throw ParameterError("chromosome must be an array of exactly 1000 thresholds");
    }
    Chromosome c;
    for (std::size_t i = 0; i < kChromosomeBuckets; ++i) {
      const double t = doc.at(i).get<double>();
      if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ParameterError("chromosome thresholds must be finite and >= 0");
      }
      c.thresholds[i] = t;
    }
    return c;
  });
}

Json to_json(const FuzzySystem& system) {
  const auto set_json = [](const MembershipSet& set) {
    Json arr = Json::array();
    for (const auto& t : set) arr.push_back(to_json(t));
    return arr;
  };
  Json rules = Json::array();
  for (const auto& r : system.rules) {
    rules.push_back(Json::array({closeness_label(r.closeness), level_label(r.fullness),
                                 level_label(r.output)}));
  }
  return {{"inputs",
           {{"closeness", set_json(system.closeness)}, {"fullness", set_json(system.fullness)}}},
          {"output", set_json(system.output)},
          {"rules", rules}};
}

FuzzySystem fuzzy_system_from_json(const Json& doc) {
  return parse_guarded("fuzzy system", [&] {
    FuzzySystem system;
    system.closeness = membership_from_json(doc.at("inputs").at("closeness"), "closeness");
    system.fullness = membership_from_json(doc.at("inputs").at("fullness"), "fullness");
    system.output = membership_from_json(doc.at("output"), "output");
    for (const auto& r : doc.at("rules")) {
      if (!r.is_array() || r.size() != 3) {
        throw ParameterError("fuzzy rules are [closeness, fullness, threshold] triples");
      }
      system.rules.push_back({parse_closeness_label(r.at(0).get<std::string>()),
                              parse_level_label(r.at(1).get<std::string>()),
                              parse_level_label(r.at(2).get<std::string>())});
    }
    validate(system);
    return system;
  });
}

Json to_json(const PolicySummary& s) {
  return {{"policy", s.policy},
          {"valid_trials", s.valid_trials},
          {"invalid_trials", s.invalid_trials},
          {"average_competitive_ratio", s.average_ratio},
          {"worst_competitive_ratio", s.worst_ratio},
          {"best_competitive_ratio", s.best_ratio},
          {"average_total_value", s.average_total_value},
          {"worst_total_value", s.worst_total_value},
          {"best_total_value", s.best_total_value}};
}

Json to_json(const EvaluationReport& report) {
  Json policies = Json::array();
  for (const auto& s : report.policies) policies.push_back(to_json(s));
  return {{"offline", to_json(report.offline)},
          {"policies", policies},
          {"bound_checks",
           {{"ratio_below_one", report.bounds.ratio_below_one},
            {"monotone_bound", report.bounds.monotone_bound},
            {"monotone_bound_exceeded", report.bounds.monotone_bound_exceeded}}},
          {"failures", report.failures}};
}

Json to_json(const StochasticReport& report) {
  Json policies = Json::array();
  for (const auto& s : report.policies) {
    policies.push_back({{"policy", s.policy}, {"mean", s.mean}, {"std_error", s.std_error}});
  }
  Json doc{{"episodes", report.episodes},
           {"dp_expected_value", report.dp_expected_value},
           {"policies", policies}};
  if (report.two_type_bound) {
    doc["two_type_upper_bound"] = {
        {"regime", report.two_type_bound->regime ==
                           UpperBoundResult::Regime::kHarvestLimited
                       ? "harvest-limited"
                       : "demand-limited"},
        {"bound", report.two_type_bound->bound},
        {"note",
         "demand-limited branch carries the factor N on the type-1 term, matching its "
         "derivation"}};
  }
  return doc;
}

void write_trials_csv(const EvaluationReport& report, std::ostream& out) {
  out << "trial,policy,alg_value,opt_value,ratio\n";
  for (const auto& r : report.rows) {
    out << r.trial << ',' << r.policy << ',' << format_number(r.alg_value) << ','
        << format_number(r.opt_value) << ',' << format_number(r.ratio) << '\n';
  }
}

void write_trajectories_csv(const StochasticReport& report, std::ostream& out) {
  out << "slot";
  for (const auto& s : report.policies) out << ',' << s.policy;
  out << '\n';
  const std::size_t horizon =
      report.policies.empty() ? 0 : report.policies.front().mean_trajectory.size();
  for (std::size_t t = 0; t < horizon; ++t) {
    out << t + 1;
    for (const auto& s : report.policies) out << ',' << format_number(s.mean_trajectory[t]);
    out << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError("'" + path + "' is not valid JSON: " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace apom
