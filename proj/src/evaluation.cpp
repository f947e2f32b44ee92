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

#include "apom/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "apom/errors.hpp"

namespace apom {
namespace {

constexpr const char* kReplay = "offline-replay";

// Per-trial outcome, filled independently and reduced in trial order.
struct TrialOutcome {
  double opt = 0.0;
  std::vector<double> alg;
  std::vector<bool> valid;
  std::vector<std::string> errors;
};

TrialOutcome run_trial(const CampaignConfig& config,
                       const std::vector<std::unique_ptr<Policy>>& policies,
                       std::int64_t trial) {
  const std::size_t n_policies = config.policies.size();
  TrialOutcome out;
  out.alg.assign(n_policies, 0.0);
  out.valid.assign(n_policies, false);
  out.errors.assign(n_policies, {});
  try {
    const EpisodeInstance instance =
        config.fixed_instances.empty()
            ? generate(config.generator,
                       RandomSource(config.seed).derive(static_cast<std::uint64_t>(trial)))
            : config.fixed_instances[static_cast<std::size_t>(trial) %
                                     config.fixed_instances.size()];
    const OfflineSolution opt = solve_offline(instance, config.offline);
    out.opt = opt.total_value;
    for (std::size_t p = 0; p < n_policies; ++p) {
      try {
        if (config.policies[p] == kReplay) {
          out.alg[p] = run_episode(instance, ReplayPolicy(opt.selection)).total_value;
        } else {
          out.alg[p] = run_episode(instance, *policies[p]).total_value;
        }
        out.valid[p] = true;
      } catch (const std::exception& ex) {
        out.errors[p] = ex.what();
      }
    }
  } catch (const std::exception& ex) {
    for (auto& e : out.errors) e = ex.what();
  }
  return out;
}

PolicySummary summarize(const std::string& name, const std::vector<double>& totals,
                        const std::vector<double>& ratios, std::int64_t invalid) {
  PolicySummary s;
  s.policy = name;
  s.valid_trials = static_cast<std::int64_t>(totals.size());
  s.invalid_trials = invalid;
  if (totals.empty()) return s;
  double sum_total = 0.0, sum_ratio = 0.0;
  for (double t : totals) sum_total += t;
  for (double r : ratios) sum_ratio += r;
  const auto n = static_cast<double>(totals.size());
  s.average_total_value = sum_total / n;
  s.worst_total_value = *std::min_element(totals.begin(), totals.end());
  s.best_total_value = *std::max_element(totals.begin(), totals.end());
  s.average_ratio = sum_ratio / n;
  s.worst_ratio = *std::max_element(ratios.begin(), ratios.end());
  s.best_ratio = *std::min_element(ratios.begin(), ratios.end());
  return s;
}

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyContext& context) {
  if (name == "greedy") return std::make_unique<GreedyPolicy>();
  if (name == "conservative") {
    if (context.best_efficiency) return std::make_unique<ConservativePolicy>(*context.best_efficiency);
    if (context.types) {
      return std::make_unique<ConservativePolicy>(context.types->best_efficiency());
    }
    throw ParameterError("conservative policy needs a best efficiency or user types");
  }
  if (name == "expected-threshold") {
    if (!context.types) throw ParameterError("expected-threshold policy needs user types");
    return std::make_unique<ExpectedThresholdPolicy>(*context.types, context.q,
                                                     context.horizon_factor);
  }
  if (name == "dp") {
    if (!context.thresholds) throw ParameterError("dp policy needs a threshold table");
    return std::make_unique<DpThresholdPolicy>(context.thresholds);
  }
  if (name == "monotone") return std::make_unique<MonotonePolicy>(context.bounds);
  if (name == "jumping") return std::make_unique<JumpingPolicy>(context.bounds);
  if (name == "ga") {
    if (!context.chromosome) throw ParameterError("ga policy needs a chromosome");
    return std::make_unique<ChromosomePolicy>(*context.chromosome);
  }
  if (name == "fuzzy") return std::make_unique<FuzzyPolicy>(context.fuzzy, context.bounds);
  throw ParameterError("unknown policy '" + name + "'");
}

EpisodeInstance generate(const GeneratorParams& params, const RandomSource& rng) {
  return generate_deterministic_instance(params.n_users, params.efficiency,
                                         params.weight_range, params.schedule, rng,
                                         params.weight_quantum);
}

const PolicySummary& EvaluationReport::summary(const std::string& policy) const {
  for (const auto& s : policies) {
    if (s.policy == policy) return s;
  }
  throw ParameterError("no summary for policy '" + policy + "'");
}

EvaluationReport run_campaign(const CampaignConfig& config, Execution execution) {
  if (config.trials < 1) throw ParameterError("campaign needs at least one trial");
  if (config.policies.empty()) throw ParameterError("campaign needs at least one policy");
  std::vector<std::unique_ptr<Policy>> policies;
  for (const auto& name : config.policies) {
    policies.push_back(name == kReplay ? nullptr : make_policy(name, config.context));
  }

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < config.trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(config, policies, t);
    }
  } else {
    for (std::int64_t t = 0; t < config.trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(config, policies, t);
    }
  }

  EvaluationReport report;
  const std::size_t n_policies = config.policies.size();
  std::vector<std::vector<double>> totals(n_policies), ratios(n_policies);
  std::vector<std::int64_t> invalid(n_policies, 0);
  std::vector<double> opt_totals;
  report.bounds.monotone_bound = competitive_bound(config.context.bounds);

  for (std::int64_t t = 0; t < config.trials; ++t) {
    const auto& out = outcomes[static_cast<std::size_t>(t)];
    bool any_valid = false;
    for (std::size_t p = 0; p < n_policies; ++p) {
      if (!out.valid[p]) {
        ++invalid[p];
        std::ostringstream msg;
        msg << "trial " << t << " " << config.policies[p] << ": " << out.errors[p];
        report.failures.push_back(msg.str());
        continue;
      }
      any_valid = true;
      const double ratio = competitive_ratio(out.opt, out.alg[p]);
      totals[p].push_back(out.alg[p]);
      ratios[p].push_back(ratio);
      report.rows.push_back({t, config.policies[p], out.alg[p], out.opt, ratio});
      if (out.alg[p] > out.opt + 1e-9 * std::max(1.0, out.opt)) ++report.bounds.ratio_below_one;
      if (config.policies[p] == "monotone" && ratio > report.bounds.monotone_bound) {
        ++report.bounds.monotone_bound_exceeded;
      }
    }
    if (any_valid) opt_totals.push_back(out.opt);
  }

  for (std::size_t p = 0; p < n_policies; ++p) {
    report.policies.push_back(summarize(config.policies[p], totals[p], ratios[p], invalid[p]));
  }
  report.offline = summarize("offline", opt_totals,
                             std::vector<double>(opt_totals.size(), 1.0),
                             config.trials - static_cast<std::int64_t>(opt_totals.size()));
  return report;
}

UpperBoundResult two_type_upper_bound(double v1, double w1, double v2, double w2,
                                      double p1, double q, std::int64_t n_slots) {
  if (!(v1 > 0.0 && w1 > 0.0 && v2 > 0.0 && w2 > 0.0) || n_slots < 0) {
    throw ParameterError("two-type bound needs positive values and weights");
  }
  if (!(p1 >= 0.0 && p1 <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw ParameterError("two-type bound needs p1, q in [0,1]");
  }
  if (v1 / w1 < v2 / w2) {
    throw ParameterError("two-type bound expects type 1 to be the more efficient type");
  }
  const auto n = static_cast<double>(n_slots);
  UpperBoundResult out;
  if (q / w1 <= p1) {
    out.regime = UpperBoundResult::Regime::kHarvestLimited;
    out.bound = v1 * q * n / w1;
  } else {
    out.regime = UpperBoundResult::Regime::kDemandLimited;
    out.bound = v2 * q * n / w2 + (v1 - v2 * w1 / w2) * n * p1;
  }
  return out;
}

const StochasticSummary& StochasticReport::summary(const std::string& policy) const {
  for (const auto& s : policies) {
    if (s.policy == policy) return s;
  }
  throw ParameterError("no summary for policy '" + policy + "'");
}

namespace {

// Fixed-size blocks make the floating-point reduction order independent of
// the thread count.
constexpr std::int64_t kEpisodeBlock = 256;

struct BlockSums {
  std::vector<double> sum, sum_sq;
  std::vector<std::vector<double>> trajectory;
};

}  // namespace

StochasticReport stochastic_comparison(const StochasticCampaign& campaign,
                                       Execution execution) {
  if (campaign.episodes < 1) throw ParameterError("need at least one episode");
  const DpConfig& dp = campaign.dp;
  const ValueTable table = build_value_table(dp);
  auto thresholds = std::make_shared<const ThresholdTable>(extract_thresholds(table, dp));

  StochasticReport report;
  report.dp_expected_value = expected_value(table, dp, campaign.e0);
  report.episodes = campaign.episodes;

  PolicyContext ctx;
  ctx.types = dp.types;
  ctx.q = dp.q;
  ctx.horizon_factor = campaign.horizon_factor;
  ctx.thresholds = thresholds;
  ctx.best_efficiency = dp.types.best_efficiency();
  std::vector<std::unique_ptr<Policy>> policies;
  for (const auto& name : campaign.policies) policies.push_back(make_policy(name, ctx));

  const std::size_t n_policies = policies.size();
  const auto horizon = static_cast<std::size_t>(dp.n_slots);
  const std::int64_t n_blocks = (campaign.episodes + kEpisodeBlock - 1) / kEpisodeBlock;
  std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));
  RunOptions run;
  run.battery_cap = static_cast<double>(dp.energy_cap);
  run.record_cumulative = campaign.record_trajectories;
  const RandomSource root(campaign.seed);

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_blocks));
  const auto accumulate_episode = [&](BlockSums& sums, std::int64_t i) {
    const EpisodeInstance ep =
        sample_stochastic_episode(dp.types, {dp.q}, dp.n_slots, campaign.e0,
                                  root.derive(static_cast<std::uint64_t>(i)));
    for (std::size_t p = 0; p < n_policies; ++p) {
      const EpisodeResult r = run_episode(ep, *policies[p], run);
      sums.sum[p] += r.total_value;
      sums.sum_sq[p] += r.total_value * r.total_value;
      if (campaign.record_trajectories) {
        for (std::size_t s = 0; s < horizon; ++s) {
          sums.trajectory[p][s] += r.cumulative_value[s];
        }
      }
    }
  };
  const auto run_block = [&](std::int64_t b) {
    BlockSums sums;
    sums.sum.assign(n_policies, 0.0);
    sums.sum_sq.assign(n_policies, 0.0);
    if (campaign.record_trajectories) {
      sums.trajectory.assign(n_policies, std::vector<double>(horizon, 0.0));
    }
    const std::int64_t end = std::min(campaign.episodes, (b + 1) * kEpisodeBlock);
    try {
      for (std::int64_t i = b * kEpisodeBlock; i < end; ++i) accumulate_episode(sums, i);
    } catch (...) {
      errors[static_cast<std::size_t>(b)] = std::current_exception();
    }
    blocks[static_cast<std::size_t>(b)] = std::move(sums);
  };

  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    for (std::int64_t b = 0; b < n_blocks; ++b) run_block(b);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  const auto m = static_cast<double>(campaign.episodes);
  for (std::size_t p = 0; p < n_policies; ++p) {
    StochasticSummary s;
    s.policy = campaign.policies[p];
    double sum = 0.0, sum_sq = 0.0;
    if (campaign.record_trajectories) s.mean_trajectory.assign(horizon, 0.0);
    for (const auto& blk : blocks) {
      sum += blk.sum[p];
      sum_sq += blk.sum_sq[p];
      if (campaign.record_trajectories) {
        for (std::size_t t = 0; t < horizon; ++t) s.mean_trajectory[t] += blk.trajectory[p][t];
      }
    }
    for (auto& v : s.mean_trajectory) v /= m;
    s.mean = sum / m;
    const double var = campaign.episodes > 1
                           ? std::max(0.0, (sum_sq - m * s.mean * s.mean) / (m - 1.0))
                           : 0.0;
    s.std_error = std::sqrt(var / m);
    report.policies.push_back(std::move(s));
  }

  if (dp.types.size() == 2) {
    const auto& better = dp.types[1];
    const auto& worse = dp.types[0];
    report.two_type_bound =
        two_type_upper_bound(better.demand.value, better.demand.weight, worse.demand.value,
                             worse.demand.weight, better.probability, dp.q, dp.n_slots);
  }
  return report;
}

bool satisfies_first_interval_precondition(const EpisodeInstance& instance,
                                           const EfficiencyBounds& bounds) {
  const auto arrivals = instance.schedule.arrivals();
  if (arrivals.size() < 2) return true;
  EpisodeInstance relaxed = instance;
  relaxed.schedule = EnergyArrivalSchedule({{0, instance.schedule.total()}});
  RunOptions opts;
  opts.record_trace = true;
  const EpisodeResult r = run_episode(relaxed, MonotonePolicy(bounds), opts);
  double first_interval = 0.0;
  for (const auto& rec : r.trace) {
    if (rec.slot - 1 >= arrivals[1].slot) break;
    if (rec.served) first_interval += rec.demand.weight;
  }
  return first_interval <= arrivals[0].amount + 1e-9;
}

}  // namespace apom
