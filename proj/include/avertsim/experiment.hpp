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

#ifndef AVERTSIM__EXPERIMENT_HPP_
#define AVERTSIM__EXPERIMENT_HPP_

#include "avertsim/engine.hpp"
#include "avertsim/report.hpp"
#include "avertsim/scenarios.hpp"
#include "avertsim/severity.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace avertsim::experiment
{

/// One (scenario, variation) pair. Its id is "<scenario>-<variation index>".
struct CaseSpec
{
  scenarios::Scenario scenario;
  std::size_t variation_index{0};
  scenarios::Variation variation;

  std::string id() const;
};

/// Parses "<scenario>-<variation index>".
std::optional<std::pair<int, std::size_t>> parse_case_id(std::string_view text);

/// Every variation of every scenario; car scenarios use `car`, bike scenarios `bike`.
std::vector<CaseSpec> enumerate_cases(
  std::span<const scenarios::Scenario> scenarios,
  const scenarios::VariationGrid & car = scenarios::car_grid(),
  const scenarios::VariationGrid & bike = scenarios::bike_grid());

/// The twelve standard configurations: {min, mid, prem} x {AEB, 2 s, 1.5 s, 1.25 s}.
std::vector<engine::RunConfig> default_configs();

report::CaseResult evaluate_case(
  const CaseSpec & spec, const scenarios::SceneLayout & layout, const engine::RunConfig & cfg,
  const severity::ModelSet & models);

/// Runs every case under every config on `workers` threads. Results are
/// ordered config-major, then by case, whatever the worker count.
std::vector<report::CaseResult> run_batch(
  std::span<const CaseSpec> cases, std::span<const engine::RunConfig> configs,
  const severity::ModelSet & models, unsigned workers = 1,
  const scenarios::LayoutParams & params = {});

}  // namespace avertsim::experiment

#endif  // AVERTSIM__EXPERIMENT_HPP_
