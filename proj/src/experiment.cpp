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

#include "avertsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>

namespace avertsim::experiment
{

std::string CaseSpec::id() const
{
  return std::to_string(scenario.id) + "-" + std::to_string(variation_index);
}

std::optional<std::pair<int, std::size_t>> parse_case_id(const std::string_view text)
{
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    return std::nullopt;
  }
  int scenario = 0;
  std::size_t index = 0;
  const auto a = std::from_chars(text.data(), text.data() + dash, scenario);
  const auto b = std::from_chars(text.data() + dash + 1, text.data() + text.size(), index);
  if (
    a.ec != std::errc() || a.ptr != text.data() + dash || b.ec != std::errc() ||
    b.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return std::make_pair(scenario, index);
}

std::vector<CaseSpec> enumerate_cases(
  std::span<const scenarios::Scenario> scenarios, const scenarios::VariationGrid & car,
  const scenarios::VariationGrid & bike)
{
  std::vector<CaseSpec> out;
  for (const auto & s : scenarios) {
    const auto variations = (s.opponent_type == OpponentType::Bike ? bike : car).expand();
    for (std::size_t i = 0; i < variations.size(); ++i) {
      out.push_back({s, i, variations[i]});
    }
  }
  return out;
}

std::vector<engine::RunConfig> default_configs()
{
  using engine::RunConfig;
  using engine::System;
  std::vector<RunConfig> out;
  const std::array sensors{
    perception::SensorKind::Minimal, perception::SensorKind::Medium,
    perception::SensorKind::Premium};
  for (const auto s : sensors) {
    out.push_back(RunConfig::make(System::AebOnly, s));
  }
  for (const double ttc : {2.0, 1.5, 1.25}) {
    for (const auto s : sensors) {
      out.push_back(RunConfig::make(System::TwoStage, s, ttc));
    }
  }
  return out;
}

report::CaseResult evaluate_case(
  const CaseSpec & spec, const scenarios::SceneLayout & layout, const engine::RunConfig & cfg,
  const severity::ModelSet & models)
{
  const auto trace = engine::run(layout, cfg);
  report::CaseResult r;
  r.scenario_id = spec.scenario.id;
  r.variation_index = spec.variation_index;
  r.variation = spec.variation;
  r.config = report::ConfigKey::of(cfg);
  r.termination = trace.termination;
  r.avoided = !trace.outcome.occurred;
  if (trace.outcome.occurred) {
    r.impact_velocity = trace.outcome.impact_velocity;
    r.impact_fraction = trace.outcome.impact_fraction;
    const auto a = severity::assess(trace.outcome, spec.scenario.opponent_type, models);
    r.p_severe_ego = a.p_severe_ego;
    r.p_severe_opp = a.p_severe_opp;
  }
  return r;
}

std::vector<report::CaseResult> run_batch(
  std::span<const CaseSpec> cases, std::span<const engine::RunConfig> configs,
  const severity::ModelSet & models, const unsigned workers,
  const scenarios::LayoutParams & params)
{
  std::vector<scenarios::SceneLayout> layouts;
  layouts.reserve(cases.size());
  for (const auto & c : cases) {
    layouts.push_back(scenarios::build_layout(c.scenario, c.variation, params));
  }
  std::vector<engine::RunConfig> cfgs(configs.begin(), configs.end());
  for (auto & cfg : cfgs) {
    cfg.validate();
    cfg.record_snapshots = false;
  }

  const std::size_t total = cases.size() * cfgs.size();
  std::vector<report::CaseResult> results(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      try {
        const std::size_t c = job % cases.size();
        const std::size_t k = job / cases.size();
        results[job] = evaluate_case(cases[c], layouts[c], cfgs[k], models);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = total;
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
      pool.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return results;
}

}  // namespace avertsim::experiment
