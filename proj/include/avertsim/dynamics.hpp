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

#ifndef AVERTSIM__DYNAMICS_HPP_
#define AVERTSIM__DYNAMICS_HPP_

#include "avertsim/geometry.hpp"

#include <optional>
#include <span>

namespace avertsim::dynamics
{

using geometry::OrientedBox;
using geometry::Vec2;

/// Rigid body parameters. Mass and center of gravity are carried for
/// configuration compatibility; straight-line kinematic motion does not use them.
struct VehicleBody
{
  double length{4.5};
  double width{1.8};
  double mass{1500.0};
  double cog_from_front{2.0};
};

/// Kinematic bicycle state. All scenario paths are straight, so the steering
/// angle stays at zero and the heading is constant.
struct VehicleState
{
  Vec2 position;  // body center
  double heading{0.0};
  double speed{0.0};          // m/s, >= 0
  double current_decel{0.0};  // m/s^2, >= 0
  double steering_angle{0.0};
  VehicleBody body;

  Vec2 direction() const { return Vec2::unit(heading); }
  Vec2 velocity() const { return direction() * speed; }
  Vec2 front_center() const { return position + direction() * (0.5 * body.length); }
  OrientedBox footprint() const { return OrientedBox(position, heading, body.length, body.width); }
};

/// Ramp the deceleration toward target_decel at `jerk`, beginning at start_time
/// (absolute simulation time, application delay already included).
struct BrakeCommand
{
  double target_decel{0.0};
  double jerk{45.0};
  double start_time{0.0};

  bool operator==(const BrakeCommand &) const = default;
};

struct StoppingParams
{
  double v{0.0};        // speed at brake request, m/s
  double a{9.0};        // target deceleration, m/s^2
  double j{45.0};       // jerk, m/s^3
  double delta_t{0.0};  // application delay, s
};

/// Distance to standstill for a jerk-limited brake preceded by an application
/// delay. For v >= a^2 / (2 j):
///
///   x = a v / (2 j) - a^3 / (24 j^2) + v^2 / (2 a) + v delta_t
///
/// Below that speed the vehicle stops during the jerk ramp and the exact
/// ramp-only distance (2/3) v sqrt(2 v / j) + v delta_t is returned instead.
/// Throws std::invalid_argument for a <= 0, j <= 0, v < 0 or delta_t < 0.
double stopping_distance(const StoppingParams & p);

/// Speed at time t of a vehicle starting at v0 with deceleration initial_decel,
/// held until cmd.start_time and then ramped toward cmd.target_decel.
double braked_speed_profile(
  double v0, const BrakeCommand & cmd, double t, double initial_decel = 0.0);

/// Exact integration of the state over [now, now + dt].
///
/// `plan` must be sorted by start_time. At any instant the governing command is
/// the last one whose start_time has passed; before the first start the current
/// deceleration is held. Speed clamps at zero.
VehicleState advance(
  const VehicleState & state, double now, double dt, std::span<const BrakeCommand> plan);

VehicleState advance(
  const VehicleState & state, double now, double dt, const std::optional<BrakeCommand> & cmd);

}  // namespace avertsim::dynamics

#endif  // AVERTSIM__DYNAMICS_HPP_
