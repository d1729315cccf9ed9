// Copyright 2026 The AvertSim Authors
//
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

#include "avertsim/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <ostream>
#include <tuple>

namespace avertsim::report
{

namespace
{

int sensor_rank(const SensorKind s)
{
  switch (s) {
    case SensorKind::Minimal:
      return 0;
    case SensorKind::Medium:
      return 1;
    case SensorKind::Premium:
      return 2;
    case SensorKind::V2X:
      return 3;
  }
  return 4;
}

struct GroupKey
{
  ConfigKey config;
  std::optional<int> scenario;

  bool operator<(const GroupKey & o) const
  {
    if (config != o.config) {
      return config < o.config;
    }
    return scenario < o.scenario;
  }
};

}  // namespace

ConfigKey ConfigKey::of(const engine::RunConfig & cfg)
{
  return {
    cfg.system, cfg.sensor_set,
    cfg.system == System::AebOnly ? 0.0 : cfg.partial.ttc_threshold};
}

std::string ConfigKey::label() const
{
  if (system == System::AebOnly) {
    return fmt::format("{} - AEB", perception::to_string(sensors));
  }
  return fmt::format("{} - {:g} s", perception::to_string(sensors), ttc_threshold);
}

std::strong_ordering ConfigKey::operator<=>(const ConfigKey & o) const
{
  const auto key = [](const ConfigKey & k) {
    return std::make_tuple(
      k.system == System::AebOnly ? 0 : 1, -k.ttc_threshold, sensor_rank(k.sensors));
  };
  const auto a = key(*this);
  const auto b = key(o);
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<AggregateRow> aggregate(std::span<const CaseResult> results, const GroupBy group_by)
{
  if (results.empty()) {
    throw EmptyGroup("aggregate: no case results");
  }
  std::map<GroupKey, std::vector<const CaseResult *>> groups;
  for (const auto & r : results) {
    GroupKey key{r.config, std::nullopt};
    if (group_by == GroupBy::PerScenario) {
      key.scenario = r.scenario_id;
    }
    groups[key].push_back(&r);
  }

  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (auto & [key, members] : groups) {
    // Fixed summation order independent of how the results were produced.
    std::sort(members.begin(), members.end(), [](const CaseResult * a, const CaseResult * b) {
      return std::tie(a->scenario_id, a->variation_index) <
             std::tie(b->scenario_id, b->variation_index);
    });
    AggregateRow row;
    row.config = key.config;
    row.scenario_id = key.scenario;
    row.label = key.config.label();
    row.n_cases = members.size();
    std::size_t avoided = 0;
    double sum_ego = 0.0;
    double sum_opp = 0.0;
    for (const auto * m : members) {
      avoided += m->avoided ? 1 : 0;
      sum_ego += m->p_severe_ego;
      sum_opp += m->p_severe_opp;
    }
    const double n = static_cast<double>(row.n_cases);
    row.avoided_pct = 100.0 * static_cast<double>(avoided) / n;
    row.mean_p_ego = sum_ego / n;
    row.mean_p_opp = sum_opp / n;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DeltaRow> compare(
  std::span<const AggregateRow> baseline, std::span<const AggregateRow> candidate)
{
  std::map<std::optional<int>, const AggregateRow *> base;
  for (const auto & r : baseline) {
    if (!base.emplace(r.scenario_id, &r).second) {
      throw KeyMismatch("compare: baseline holds more than one row per group");
    }
  }
  std::map<std::optional<int>, const AggregateRow *> cand;
  for (const auto & r : candidate) {
    if (!cand.emplace(r.scenario_id, &r).second) {
      throw KeyMismatch("compare: candidate holds more than one row per group");
    }
  }
  if (base.size() != cand.size()) {
    throw KeyMismatch("compare: group sets differ");
  }
  std::vector<DeltaRow> out;
  for (const auto & [key, b] : base) {
    const auto it = cand.find(key);
    if (it == cand.end()) {
      throw KeyMismatch("compare: group sets differ");
    }
    const auto * c = it->second;
    out.push_back(
      {key, b->label, c->label, c->avoided_pct - b->avoided_pct, c->mean_p_ego - b->mean_p_ego,
       c->mean_p_opp - b->mean_p_opp});
  }
  return out;
}

void write_kpi_global(std::ostream & out, std::span<const AggregateRow> rows)
{
  out << "label,system,sensors,ttc_threshold,n_cases,avoided_pct,mean_p_ego,mean_p_opp\n";
  for (const auto & r : rows) {
    out << fmt::format(
      "{},{},{},{:.2f},{},{:.4f},{:.6f},{:.6f}\n", r.label, engine::to_string(r.config.system),
      perception::to_string(r.config.sensors), r.config.ttc_threshold, r.n_cases, r.avoided_pct,
      r.mean_p_ego, r.mean_p_opp);
  }
}

void write_kpi_per_scenario(std::ostream & out, std::span<const AggregateRow> rows)
{
  out << "scenario_id,label,system,sensors,ttc_threshold,n_cases,avoided_pct,mean_p_ego,"
         "mean_p_opp\n";
  for (const auto & r : rows) {
    out << fmt::format(
      "{},{},{},{},{:.2f},{},{:.4f},{:.6f},{:.6f}\n", r.scenario_id.value_or(0), r.label,
      engine::to_string(r.config.system), perception::to_string(r.config.sensors),
      r.config.ttc_threshold, r.n_cases, r.avoided_pct, r.mean_p_ego, r.mean_p_opp);
  }
}

void write_case_results(std::ostream & out, std::span<const CaseResult> results)
{
  out << "scenario_id,variation_index,ego_kph,opp_kph,unbraked_fraction,label,avoided,"
         "impact_velocity_kph,impact_fraction,p_severe_ego,p_severe_opp,termination\n";
  for (const auto & r : results) {
    out << fmt::format(
      "{},{},{:g},{:g},{:g},{},{:d},{},{},{:.6f},{:.6f},{}\n", r.scenario_id, r.variation_index,
      r.variation.ego_speed, r.variation.opp_speed, r.variation.unbraked_impact_fraction,
      r.config.label(), r.avoided,
      r.impact_velocity ? fmt::format("{:.4f}", *r.impact_velocity) : std::string(),
      r.impact_fraction ? fmt::format("{:.4f}", *r.impact_fraction) : std::string(),
      r.p_severe_ego, r.p_severe_opp, engine::to_string(r.termination));
  }
}

void write_deltas(std::ostream & out, std::span<const DeltaRow> rows)
{
  out << "scenario_id,baseline,candidate,d_avoided_pct,d_mean_p_ego,d_mean_p_opp\n";
  for (const auto & r : rows) {
    out << fmt::format(
      "{},{},{},{:.4f},{:.6f},{:.6f}\n",
      r.scenario_id ? std::to_string(*r.scenario_id) : std::string("all"), r.baseline_label,
      r.candidate_label, r.d_avoided_pct, r.d_mean_p_ego, r.d_mean_p_opp);
  }
}

std::string format_table(std::span<const AggregateRow> rows)
{
  std::string out = fmt::format(
    "{:<14} {:>16} {:>10} {:>10} {:>8}\n", "", "Avoided crashes", "Sev. ego", "Sev. opp",
    "cases");
  for (const auto & r : rows) {
    out += fmt::format(
      "{:<14} {:>15.2f}% {:>9.2f}% {:>9.2f}% {:>8}\n",
      r.scenario_id ? fmt::format("{} #{}", r.label, *r.scenario_id) : r.label, r.avoided_pct,
      100.0 * r.mean_p_ego, 100.0 * r.mean_p_opp, r.n_cases);
  }
  return out;
}

}  // namespace avertsim::report
