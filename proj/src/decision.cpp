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

#include "avertsim/decision.hpp"

#include "avertsim/geometry.hpp"

#include <stdexcept>

namespace avertsim::decision
{

void BrakeStageConfig::validate() const
{
  if (!(ttc_threshold > 0.0) || !(target_decel > 0.0) || !(jerk > 0.0) ||
      !(application_delay >= 0.0)) {
    throw std::invalid_argument("brake stage: thresholds, deceleration and jerk must be positive");
  }
  if (stage == Stage::Aeb && allow_v2x) {
    throw std::invalid_argument("brake stage: the AEB cannot be triggered by V2X objects");
  }
  if (stage == Stage::Partial && target_decel > 4.0) {
    throw std::invalid_argument("brake stage: partial brake deceleration is limited to 4 m/s^2");
  }
  if (!allow_v2x && !allow_onboard) {
    throw std::invalid_argument("brake stage: no detection source allowed");
  }
}

BrakeStageConfig BrakeStageConfig::partial(const double ttc_threshold)
{
  return {Stage::Partial, ttc_threshold, 4.0, 45.0, 0.12, true, true};
}

BrakeStageConfig BrakeStageConfig::aeb()
{
  return {Stage::Aeb, 1.25, 9.0, 45.0, 0.12, false, true};
}

CollisionPrediction predict_collision(
  const VehicleState & ego, const VehicleState & opponent, const double horizon)
{
  const auto t = geometry::first_overlap_time(
    ego.footprint(), ego.velocity(), opponent.footprint(), opponent.velocity(), horizon);
  if (!t) {
    return {};
  }
  return {true, *t, ego.speed * *t};
}

bool evaluate_stage(
  const CollisionPrediction & prediction, const double ego_speed, const BrakeStageConfig & cfg,
  const bool source_available)
{
  if (!source_available || !prediction.crash_predicted) {
    return false;
  }
  if (prediction.ttc > cfg.ttc_threshold) {
    return false;
  }
  const double x_stop = dynamics::stopping_distance(
    {ego_speed, cfg.target_decel, cfg.jerk, cfg.application_delay});
  return prediction.x_crash <= x_stop;
}

BrakePlan InterventionState::brake_plan() const
{
  BrakePlan plan;
  if (partial_command && (!aeb_command || partial_command->start_time < aeb_command->start_time)) {
    plan.commands[plan.size++] = *partial_command;
  }
  if (aeb_command) {
    plan.commands[plan.size++] = *aeb_command;
  }
  return plan;
}

InterventionState intervene(
  const InterventionState & state, const bool partial_fire, const bool aeb_fire, const double now,
  const BrakeStageConfig & partial_cfg, const BrakeStageConfig & aeb_cfg)
{
  InterventionState out = state;
  if (partial_fire && !out.partial_triggered_at) {
    out.partial_triggered_at = now;
    out.partial_command =
      BrakeCommand{partial_cfg.target_decel, partial_cfg.jerk, now + partial_cfg.application_delay};
  }
  if (aeb_fire && !out.aeb_triggered_at) {
    out.aeb_triggered_at = now;
    out.aeb_command =
      BrakeCommand{aeb_cfg.target_decel, aeb_cfg.jerk, now + aeb_cfg.application_delay};
  }
  out.active_command = out.aeb_command ? out.aeb_command : out.partial_command;
  return out;
}

}  // namespace avertsim::decision
