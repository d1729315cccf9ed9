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

#include "avertsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avertsim::dynamics
{

namespace
{

struct Kinematics
{
  double speed;
  double decel;
  double distance{0.0};
};

// Constant jerk `slope` over `tau`: v(t) = v - d t - slope t^2 / 2, clamped at zero.
void integrate_polynomial(Kinematics & k, const double slope, const double tau)
{
  if (tau <= 0.0) {
    return;
  }
  const double d_end = k.decel + slope * tau;
  if (k.speed <= 0.0) {
    k.speed = 0.0;
    k.decel = d_end;
    return;
  }
  const double v_end = k.speed - k.decel * tau - 0.5 * slope * tau * tau;
  if (v_end > 0.0) {
    k.distance += k.speed * tau - 0.5 * k.decel * tau * tau - slope * tau * tau * tau / 6.0;
    k.speed = v_end;
    k.decel = d_end;
    return;
  }
  // Smallest positive root of slope/2 t^2 + d t - v = 0, in the cancellation-free form.
  const double disc = std::max(0.0, k.decel * k.decel + 2.0 * slope * k.speed);
  const double t_stop = std::min(tau, 2.0 * k.speed / (k.decel + std::sqrt(disc)));
  k.distance += k.speed * t_stop - 0.5 * k.decel * t_stop * t_stop -
                slope * t_stop * t_stop * t_stop / 6.0;
  k.speed = 0.0;
  k.decel = d_end;
}

void integrate_toward(Kinematics & k, const double target, const double jerk, double tau)
{
  if (k.decel != target) {
    const double ramp = std::abs(target - k.decel) / jerk;
    const double slope = target > k.decel ? jerk : -jerk;
    if (ramp >= tau) {
      integrate_polynomial(k, slope, tau);
      return;
    }
    integrate_polynomial(k, slope, ramp);
    k.decel = target;
    tau -= ramp;
  }
  integrate_polynomial(k, 0.0, tau);
}

}  // namespace

double stopping_distance(const StoppingParams & p)
{
  if (!(p.a > 0.0) || !(p.j > 0.0)) {
    throw std::invalid_argument("stopping_distance: deceleration and jerk must be positive");
  }
  if (p.v < 0.0 || p.delta_t < 0.0) {
    throw std::invalid_argument("stopping_distance: speed and delay must be non-negative");
  }
  if (p.v == 0.0) {
    return 0.0;
  }
  const double delay_distance = p.v * p.delta_t;
  if (p.v < p.a * p.a / (2.0 * p.j)) {
    const double t_stop = std::sqrt(2.0 * p.v / p.j);
    return 2.0 / 3.0 * p.v * t_stop + delay_distance;
  }
  return 0.5 * p.a * p.v / p.j - p.a * p.a * p.a / (24.0 * p.j * p.j) + 0.5 * p.v * p.v / p.a +
         delay_distance;
}

double braked_speed_profile(
  const double v0, const BrakeCommand & cmd, const double t, const double initial_decel)
{
  VehicleState s;
  s.speed = v0;
  s.current_decel = initial_decel;
  return advance(s, 0.0, t, cmd).speed;
}

VehicleState advance(
  const VehicleState & state, const double now, const double dt,
  std::span<const BrakeCommand> plan)
{
  Kinematics k{state.speed, state.current_decel};
  const double end = now + dt;
  double t = now;

  // Index of the command governing at time t, or -1 while holding.
  std::ptrdiff_t governing = -1;
  for (std::size_t i = 0; i < plan.size() && plan[i].start_time <= t; ++i) {
    governing = static_cast<std::ptrdiff_t>(i);
  }
  while (t < end) {
    const auto next = static_cast<std::size_t>(governing + 1);
    const double piece_end = next < plan.size() ? std::min(end, plan[next].start_time) : end;
    if (governing < 0) {
      integrate_polynomial(k, 0.0, piece_end - t);
    } else {
      const auto & cmd = plan[static_cast<std::size_t>(governing)];
      integrate_toward(k, cmd.target_decel, cmd.jerk, piece_end - t);
    }
    t = piece_end;
    if (next < plan.size() && plan[next].start_time <= t) {
      governing = static_cast<std::ptrdiff_t>(next);
    }
  }

  VehicleState out = state;
  out.position = state.position + state.direction() * k.distance;
  out.speed = k.speed;
  out.current_decel = std::max(k.decel, 0.0);
  return out;
}

VehicleState advance(
  const VehicleState & state, const double now, const double dt,
  const std::optional<BrakeCommand> & cmd)
{
  if (cmd) {
    return advance(state, now, dt, std::span<const BrakeCommand>(&*cmd, 1));
  }
  return advance(state, now, dt, std::span<const BrakeCommand>{});
}

}  // namespace avertsim::dynamics
