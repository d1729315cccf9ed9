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

#ifndef AVERTSIM__DECISION_HPP_
#define AVERTSIM__DECISION_HPP_

#include "avertsim/dynamics.hpp"

#include <array>
#include <optional>
#include <span>

namespace avertsim::decision
{

using dynamics::BrakeCommand;
using dynamics::VehicleState;

enum class Stage { Partial, Aeb };

struct BrakeStageConfig
{
  Stage stage{Stage::Partial};
  double ttc_threshold{2.0};      // s
  double target_decel{4.0};       // m/s^2
  double jerk{45.0};              // m/s^3
  double application_delay{0.12}; // s
  bool allow_v2x{true};
  bool allow_onboard{true};

  /// Partial may use V2X and onboard objects and brakes at most 4 m/s^2; the
  /// AEB may only use onboard objects. Throws std::invalid_argument otherwise.
  void validate() const;

  static BrakeStageConfig partial(double ttc_threshold = 2.0);
  static BrakeStageConfig aeb();
};

struct CollisionPrediction
{
  bool crash_predicted{false};
  double ttc{0.0};      // s until first footprint overlap
  double x_crash{0.0};  // ego travel until then, m
};

/// Constant velocity and heading extrapolation of both footprints; ttc is the
/// exact first overlap instant within [0, horizon].
CollisionPrediction predict_collision(
  const VehicleState & ego, const VehicleState & opponent, double horizon = 5.0);

/// Both trigger conditions: x_crash <= x_stop and ttc <= threshold (ties fire).
bool evaluate_stage(
  const CollisionPrediction & prediction, double ego_speed, const BrakeStageConfig & cfg,
  bool source_available);

/// Commands handed to the dynamics, sorted by start time.
struct BrakePlan
{
  std::array<BrakeCommand, 2> commands{};
  std::size_t size{0};

  std::span<const BrakeCommand> view() const { return {commands.data(), size}; }
};

struct InterventionState
{
  std::optional<double> partial_triggered_at;
  std::optional<double> aeb_triggered_at;
  std::optional<BrakeCommand> partial_command;
  std::optional<BrakeCommand> aeb_command;
  std::optional<BrakeCommand> active_command;

  bool operator==(const InterventionState &) const = default;

  /// The partial brake governs until the AEB command starts; a partial command
  /// that would start after the AEB is dropped.
  BrakePlan brake_plan() const;
};

/// Latches trigger times; the AEB always takes priority over the partial brake.
InterventionState intervene(
  const InterventionState & state, bool partial_fire, bool aeb_fire, double now,
  const BrakeStageConfig & partial_cfg, const BrakeStageConfig & aeb_cfg);

}  // namespace avertsim::decision

#endif  // AVERTSIM__DECISION_HPP_
