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

#ifndef AVERTSIM__REPORT_HPP_
#define AVERTSIM__REPORT_HPP_

#include "avertsim/engine.hpp"
#include "avertsim/scenarios.hpp"

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace avertsim::report
{

using engine::System;
using perception::SensorKind;

/// Identifies one braking system configuration.
struct ConfigKey
{
  System system{System::AebOnly};
  SensorKind sensors{SensorKind::Medium};
  double ttc_threshold{0.0};  // partial stage threshold, 0 for AEB-only

  static ConfigKey of(const engine::RunConfig & cfg);
  std::string label() const;

  bool operator==(const ConfigKey &) const = default;
  /// AEB-only first, then two-stage by decreasing threshold; sensors min < mid < prem.
  std::strong_ordering operator<=>(const ConfigKey & o) const;
};

struct CaseResult
{
  int scenario_id{0};
  std::size_t variation_index{0};
  scenarios::Variation variation;
  ConfigKey config;
  bool avoided{true};
  double p_severe_ego{0.0};
  double p_severe_opp{0.0};
  std::optional<double> impact_velocity;  // kph
  std::optional<double> impact_fraction;
  engine::Termination termination{engine::Termination::Horizon};
};

enum class GroupBy { Global, PerScenario };

struct AggregateRow
{
  ConfigKey config;
  std::optional<int> scenario_id;  // set for per-scenario rows
  std::string label;
  double avoided_pct{0.0};
  double mean_p_ego{0.0};
  double mean_p_opp{0.0};
  std::size_t n_cases{0};
};

class EmptyGroup : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class KeyMismatch : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Means run over every case; avoided cases contribute zero severity.
/// Rows are ordered by config, then scenario id. Throws EmptyGroup.
std::vector<AggregateRow> aggregate(std::span<const CaseResult> results, GroupBy group_by);

struct DeltaRow
{
  std::optional<int> scenario_id;
  std::string baseline_label;
  std::string candidate_label;
  double d_avoided_pct{0.0};
  double d_mean_p_ego{0.0};
  double d_mean_p_opp{0.0};
};

/// Candidate minus baseline per group (scenario id, or the single global row).
/// Each side must hold exactly one row per group and both sides the same groups;
/// throws KeyMismatch otherwise.
std::vector<DeltaRow> compare(
  std::span<const AggregateRow> baseline, std::span<const AggregateRow> candidate);

/// Columns: label,system,sensors,ttc_threshold,n_cases,avoided_pct,mean_p_ego,mean_p_opp
void write_kpi_global(std::ostream & out, std::span<const AggregateRow> rows);
/// Columns: scenario_id,label,system,sensors,ttc_threshold,n_cases,avoided_pct,mean_p_ego,mean_p_opp
void write_kpi_per_scenario(std::ostream & out, std::span<const AggregateRow> rows);
void write_case_results(std::ostream & out, std::span<const CaseResult> results);
void write_deltas(std::ostream & out, std::span<const DeltaRow> rows);

/// Console table of KPI rows (percentages).
std::string format_table(std::span<const AggregateRow> rows);

}  // namespace avertsim::report

#endif  // AVERTSIM__REPORT_HPP_
