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

#include "avertsim/engine.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace avertsim::engine
{

namespace
{

constexpr double kContactTimeTolerance = 1e-7;
constexpr int kContactProbes = 64;

struct Interval
{
  double lo;
  double hi;
};

Interval project(const geometry::OrientedBox & box, const geometry::Vec2 & axis)
{
  const double c = box.center().dot(axis);
  const double r = 0.5 * box.length() * std::abs(box.forward().dot(axis)) +
                   0.5 * box.width() * std::abs(box.left().dot(axis));
  return {c - r, c + r};
}

// True when `mover` has left the strip swept by `lane_owner` along its heading
// and keeps moving away from it.
bool cleared_lane(const VehicleState & mover, const VehicleState & lane_owner)
{
  const auto lane = lane_owner.footprint();
  const geometry::Vec2 n = lane.left();
  const double c = lane.center().dot(n);
  const double half = 0.5 * lane.width();
  const Interval p = project(mover.footprint(), n);
  const double u = mover.velocity().dot(n);
  return (u > 0.0 && p.lo > c + half) || (u < 0.0 && p.hi < c - half);
}

ImpactOutcome make_outcome(
  const VehicleState & ego, const VehicleState & opp, const double t,
  const OpponentType opponent_type)
{
  ImpactOutcome out;
  out.occurred = true;
  out.time = t;
  out.impact_velocity = mps_to_kph(ego.speed);
  out.impact_fraction = impact_fraction(ego, opp);
  if (opponent_type == OpponentType::Car) {
    out.zone = severity::zone_for_fraction(out.impact_fraction);
  }
  return out;
}

}  // namespace

std::string_view to_string(const System system)
{
  return system == System::AebOnly ? "aeb" : "two-stage";
}

std::optional<System> parse_system(const std::string_view text)
{
  if (text == "aeb") return System::AebOnly;
  if (text == "two-stage") return System::TwoStage;
  return std::nullopt;
}

std::string_view to_string(const Termination termination)
{
  switch (termination) {
    case Termination::Crash:
      return "crash";
    case Termination::OpponentCleared:
      return "opponent_cleared";
    case Termination::EgoCleared:
      return "ego_cleared";
    case Termination::EgoStopped:
      return "ego_stopped";
    case Termination::Horizon:
      return "horizon";
  }
  return "?";
}

RunConfig RunConfig::make(
  const System system, const SensorKind sensor_set, const double partial_ttc_threshold)
{
  RunConfig cfg;
  cfg.system = system;
  cfg.sensor_set = sensor_set;
  cfg.partial = BrakeStageConfig::partial(partial_ttc_threshold);
  cfg.onboard = SensorSpec::defaults(sensor_set);
  return cfg;
}

void RunConfig::validate() const
{
  if (!(slot > 0.0) || !(horizon > 0.0) || !(prediction_horizon > 0.0)) {
    throw std::invalid_argument("run config: slot and horizons must be positive");
  }
  if (sensor_set == SensorKind::V2X || onboard.name == SensorKind::V2X) {
    throw std::invalid_argument("run config: the onboard sensor set cannot be V2X");
  }
  if (v2x.name != SensorKind::V2X) {
    throw std::invalid_argument("run config: V2X channel must use a V2X sensor spec");
  }
  partial.validate();
  aeb.validate();
  onboard.validate();
  v2x.validate();
}

std::string RunConfig::label() const
{
  if (system == System::AebOnly) {
    return fmt::format("{} - AEB", perception::to_string(sensor_set));
  }
  return fmt::format("{} - {:g} s", perception::to_string(sensor_set), partial.ttc_threshold);
}

double impact_fraction(const VehicleState & ego, const VehicleState & opponent)
{
  const double along = (ego.position - opponent.position).dot(opponent.direction());
  const double length = opponent.body.length;
  return std::clamp((0.5 * length - along) / length, 0.0, 1.0);
}

// Offset into the slot at which the exact motions overlap, if they do. The
// swept test uses the chord of the ego path (within decel * slot^2 / 8 of it).
std::optional<double> contact_in_slot(
  const VehicleState & ego, const VehicleState & ego_next, const VehicleState & opp,
  const VehicleState & opp_next, const double now, const double slot,
  std::span<const dynamics::BrakeCommand> plan)
{
  if (geometry::boxes_overlap(ego_next.footprint(), opp_next.footprint())) {
    return slot;
  }
  const auto chord = geometry::first_overlap_time(
    ego.footprint(), (ego_next.position - ego.position) * (1.0 / slot), opp.footprint(),
    (opp_next.position - opp.position) * (1.0 / slot), slot);
  if (!chord) {
    return std::nullopt;
  }
  const auto overlaps_at = [&](const double dt) {
    const auto e = dynamics::advance(ego, now, dt, plan);
    const auto o = dynamics::advance(opp, now, dt, std::nullopt);
    return geometry::boxes_overlap(e.footprint(), o.footprint());
  };
  if (overlaps_at(*chord)) {
    return *chord;
  }
  for (int i = 1; i < kContactProbes; ++i) {
    const double dt = slot * i / kContactProbes;
    if (overlaps_at(dt)) {
      return dt;
    }
  }
  return std::nullopt;
}

RunTrace run(const SceneLayout & layout, const RunConfig & cfg)
{
  RunTrace trace;
  VehicleState ego = layout.ego_initial;
  VehicleState opp = layout.opp_initial;
  const double cap = layout.nominal_contact_time + cfg.horizon;
  const bool two_stage = cfg.braking_enabled && cfg.system == System::TwoStage;

  if (cfg.record_snapshots) {
    trace.snapshots.reserve(static_cast<std::size_t>(cap / cfg.slot) + 2);
  }

  const auto sense_and_decide = [&](const double now) {
    trace.v2x_track =
      perception::detect(ego, opp, cfg.v2x, layout.obstacles, now, trace.v2x_track);
    trace.onboard_track =
      perception::detect(ego, opp, cfg.onboard, layout.obstacles, now, trace.onboard_track);
    const bool v2x = trace.v2x_track.available(now);
    const bool onboard = trace.onboard_track.available(now);

    const bool partial_pending = two_stage && !trace.intervention.partial_triggered_at;
    const bool aeb_pending = cfg.braking_enabled && !trace.intervention.aeb_triggered_at;
    const bool partial_source =
      (cfg.partial.allow_v2x && v2x) || (cfg.partial.allow_onboard && onboard);
    const bool aeb_source = (cfg.aeb.allow_v2x && v2x) || (cfg.aeb.allow_onboard && onboard);

    CollisionPrediction prediction;
    const bool needed = (partial_pending && partial_source) || (aeb_pending && aeb_source);
    if (needed || cfg.record_snapshots) {
      prediction = decision::predict_collision(ego, opp, cfg.prediction_horizon);
    }
    const bool partial_fire =
      partial_pending && decision::evaluate_stage(prediction, ego.speed, cfg.partial, partial_source);
    const bool aeb_fire =
      aeb_pending && decision::evaluate_stage(prediction, ego.speed, cfg.aeb, aeb_source);
    if (partial_fire || aeb_fire) {
      trace.intervention = decision::intervene(
        trace.intervention, partial_fire, aeb_fire, now, cfg.partial, cfg.aeb);
    }
    if (cfg.record_snapshots) {
      trace.snapshots.push_back(
        {now, ego, opp, v2x, onboard, prediction,
         trace.intervention.partial_triggered_at.has_value(),
         trace.intervention.aeb_triggered_at.has_value()});
    }
  };

  if (geometry::boxes_overlap(ego.footprint(), opp.footprint())) {
    trace.outcome = make_outcome(ego, opp, 0.0, layout.opponent_type);
    trace.termination = Termination::Crash;
    return trace;
  }
  sense_and_decide(0.0);

  for (std::size_t k = 0;; ++k) {
    const double now = static_cast<double>(k) * cfg.slot;
    const double next = static_cast<double>(k + 1) * cfg.slot;
    if (next > cap + 1e-9) {
      trace.termination = Termination::Horizon;
      trace.horizon_exceeded = true;
      trace.end_time = now;
      break;
    }
    const auto plan = trace.intervention.brake_plan();
    const VehicleState ego_next = dynamics::advance(ego, now, cfg.slot, plan.view());
    const VehicleState opp_next = dynamics::advance(opp, now, cfg.slot, std::nullopt);
    ++trace.slots;

    const auto touch = contact_in_slot(ego, ego_next, opp, opp_next, now, cfg.slot, plan.view());
    if (touch) {
      // First contact lies in (now, now + touch]; bisect on the exact motion.
      double lo = 0.0;
      double hi = *touch;
      while (hi - lo > kContactTimeTolerance) {
        const double mid = 0.5 * (lo + hi);
        const auto e = dynamics::advance(ego, now, mid, plan.view());
        const auto o = dynamics::advance(opp, now, mid, std::nullopt);
        if (geometry::boxes_overlap(e.footprint(), o.footprint())) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      const auto e = dynamics::advance(ego, now, hi, plan.view());
      const auto o = dynamics::advance(opp, now, hi, std::nullopt);
      trace.outcome = make_outcome(e, o, now + hi, layout.opponent_type);
      trace.termination = Termination::Crash;
      trace.end_time = now + hi;
      break;
    }

    ego = ego_next;
    opp = opp_next;
    sense_and_decide(next);

    if (cleared_lane(opp, ego)) {
      trace.termination = Termination::OpponentCleared;
      trace.end_time = next;
      break;
    }
    if (cleared_lane(ego, opp)) {
      trace.termination = Termination::EgoCleared;
      trace.end_time = next;
      break;
    }
    if (ego.speed == 0.0) {
      const auto contact = geometry::first_overlap_time(
        ego.footprint(), {}, opp.footprint(), opp.velocity(),
        std::numeric_limits<double>::infinity());
      if (!contact) {
        trace.termination = Termination::EgoStopped;
        trace.end_time = next;
        break;
      }
    }
  }
  return trace;
}

ImpactOutcome unbraked_replay(const SceneLayout & layout)
{
  RunConfig cfg;
  cfg.braking_enabled = false;
  cfg.record_snapshots = false;
  return run(layout, cfg).outcome;
}

void write_trace_csv(std::ostream & out, const RunTrace & trace)
{
  out << "t,ego_x,ego_y,ego_v,ego_decel,opp_x,opp_y,opp_v,v2x_available,onboard_available,"
         "crash_predicted,ttc,x_crash,partial_triggered,aeb_triggered\n";
  for (const auto & s : trace.snapshots) {
    out << fmt::format(
      "{:.2f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:d},{:d},{:d},{:.6f},{:.6f},{:d},"
      "{:d}\n",
      s.t, s.ego.position.x, s.ego.position.y, s.ego.speed, s.ego.current_decel, s.opp.position.x,
      s.opp.position.y, s.opp.speed, s.v2x_available, s.onboard_available,
      s.prediction.crash_predicted, s.prediction.ttc, s.prediction.x_crash, s.partial_triggered,
      s.aeb_triggered);
  }
}

}  // namespace avertsim::engine
