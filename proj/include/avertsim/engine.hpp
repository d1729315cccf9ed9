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

#ifndef AVERTSIM__ENGINE_HPP_
#define AVERTSIM__ENGINE_HPP_

#include "avertsim/decision.hpp"
#include "avertsim/dynamics.hpp"
#include "avertsim/perception.hpp"
#include "avertsim/scenarios.hpp"
#include "avertsim/severity.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avertsim::engine
{

using decision::BrakeStageConfig;
using decision::CollisionPrediction;
using decision::InterventionState;
using dynamics::VehicleState;
using perception::SensorKind;
using perception::SensorSpec;
using scenarios::SceneLayout;
using severity::ImpactOutcome;

enum class System { AebOnly, TwoStage };

std::string_view to_string(System system);
/// Accepts "aeb" and "two-stage".
std::optional<System> parse_system(std::string_view text);

struct RunConfig
{
  System system{System::TwoStage};
  SensorKind sensor_set{SensorKind::Medium};
  double slot{0.01};                // s
  double horizon{15.0};             // s simulated beyond the unbraked contact time
  double prediction_horizon{5.0};   // s
  bool braking_enabled{true};
  bool record_snapshots{true};
  BrakeStageConfig partial{BrakeStageConfig::partial(2.0)};
  BrakeStageConfig aeb{BrakeStageConfig::aeb()};
  SensorSpec onboard{SensorSpec::medium()};
  SensorSpec v2x{SensorSpec::v2x()};

  /// Default stage and sensor parameters for one system configuration.
  static RunConfig make(System system, SensorKind sensor_set, double partial_ttc_threshold = 2.0);

  double partial_ttc_threshold() const { return partial.ttc_threshold; }
  /// Throws std::invalid_argument.
  void validate() const;
  /// "mid - AEB", "min - 1.5 s", ...
  std::string label() const;
};

struct Snapshot
{
  double t{0.0};
  VehicleState ego;
  VehicleState opp;
  bool v2x_available{false};
  bool onboard_available{false};
  CollisionPrediction prediction;
  bool partial_triggered{false};
  bool aeb_triggered{false};
};

enum class Termination { Crash, OpponentCleared, EgoCleared, EgoStopped, Horizon };

std::string_view to_string(Termination termination);

struct RunTrace
{
  std::vector<Snapshot> snapshots;
  perception::DetectionTrack v2x_track;
  perception::DetectionTrack onboard_track;
  InterventionState intervention;
  ImpactOutcome outcome;
  Termination termination{Termination::Horizon};
  bool horizon_exceeded{false};
  std::size_t slots{0};
  double end_time{0.0};
};

/// Simulates one case slot by slot: move, crash check, sense, predict, decide,
/// intervene. Brake commands take effect from their start time on.
RunTrace run(const SceneLayout & layout, const RunConfig & cfg);

/// Contact outcome with every brake disabled.
ImpactOutcome unbraked_replay(const SceneLayout & layout);

/// Fraction along the opponent body (0 = front, 1 = rear) abreast of the ego
/// centerline, clamped to [0, 1].
double impact_fraction(const VehicleState & ego, const VehicleState & opponent);

/// Delimited time series: t, ego x/y/v/decel, opp x/y/v, flags.
void write_trace_csv(std::ostream & out, const RunTrace & trace);

}  // namespace avertsim::engine

#endif  // AVERTSIM__ENGINE_HPP_
