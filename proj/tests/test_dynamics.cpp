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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace
{

using avertsim::dynamics::advance;
using avertsim::dynamics::braked_speed_profile;
using avertsim::dynamics::BrakeCommand;
using avertsim::dynamics::stopping_distance;
using avertsim::dynamics::StoppingParams;
using avertsim::dynamics::VehicleState;

struct Integrated
{
  double distance;
  double speed;
};

// Fixed-step integration of the jerk-limited profile; independent of the closed forms.
Integrated integrate_profile(
  const double v0, const double target, const double jerk, const double start, const double t_end,
  const double d0 = 0.0, const double h = 1e-5)
{
  const auto decel_at = [&](const double t) {
    if (t < start) {
      return d0;
    }
    const double ramp = (t - start) * jerk;
    return d0 <= target ? std::min(d0 + ramp, target) : std::max(d0 - ramp, target);
  };
  double v = v0;
  double x = 0.0;
  const auto steps = static_cast<long>(std::ceil(t_end / h));
  for (long i = 0; i < steps && v > 0.0; ++i) {
    const double t = i * h;
    const double dt = std::min(h, t_end - t);
    const double dv = 0.5 * (decel_at(t) + decel_at(t + dt)) * dt;
    if (dv >= v) {
      // Stop inside this step: assume constant decel over the remainder.
      const double frac = v / dv;
      x += 0.5 * v * frac * dt;
      v = 0.0;
      break;
    }
    x += (v - 0.5 * dv) * dt;
    v -= dv;
  }
  return {x, v};
}

}  // namespace

TEST(StoppingDistance, examples)
{
  EXPECT_EQ(stopping_distance({0.0, 9.0, 45.0, 0.12}), 0.0);
  EXPECT_NEAR(stopping_distance({16.667, 9.0, 45.0, 0.12}), 19.084, 1e-3);
  EXPECT_NEAR(stopping_distance({13.889, 4.0, 45.0, 0.12}), 26.395, 1e-3);
}

TEST(StoppingDistance, closed_form_terms)
{
  const double v = 20.0;
  const double a = 9.0;
  const double j = 45.0;
  const double expected = a * v / (2.0 * j) - a * a * a / (24.0 * j * j) + v * v / (2.0 * a);
  EXPECT_NEAR(stopping_distance({v, a, j, 0.0}), expected, 1e-12);
  EXPECT_NEAR(stopping_distance({v, a, j, 0.5}), expected + v * 0.5, 1e-12);
}

TEST(StoppingDistance, rejects_invalid_parameters)
{
  EXPECT_THROW(stopping_distance({10.0, 0.0, 45.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(stopping_distance({10.0, 9.0, -1.0, 0.0}), std::invalid_argument);
}

TEST(StoppingDistance, matches_numeric_oracle_on_grid)
{
  for (int v = 1; v <= 35; ++v) {
    for (const double a : {4.0, 9.0}) {
      for (const double dt : {0.0, 0.12, 0.42}) {
        const auto oracle = integrate_profile(v, a, 45.0, dt, 60.0);
        EXPECT_NEAR(stopping_distance({double(v), a, 45.0, dt}), oracle.distance, 1e-3)
          << "v=" << v << " a=" << a << " dt=" << dt;
      }
    }
  }
}

TEST(StoppingDistance, short_stop_branch)
{
  // 9^2 / (2 * 45) = 0.9 m/s: below this the stop happens during the ramp.
  for (const double v : {0.05, 0.3, 0.6, 0.89}) {
    const auto oracle = integrate_profile(v, 9.0, 45.0, 0.12, 5.0, 0.0, 1e-6);
    EXPECT_NEAR(stopping_distance({v, 9.0, 45.0, 0.12}), oracle.distance, 1e-6);
    EXPECT_GT(stopping_distance({v, 9.0, 45.0, 0.0}), 0.0);
  }
  // Both branches agree at the boundary.
  const double vb = 0.9;
  EXPECT_NEAR(
    stopping_distance({vb - 1e-9, 9.0, 45.0, 0.0}), stopping_distance({vb + 1e-9, 9.0, 45.0, 0.0}),
    1e-8);
}

TEST(StoppingDistance, monotone_in_parameters)
{
  for (double v = 0.5; v < 40.0; v += 0.5) {
    EXPECT_LT(stopping_distance({v, 9.0, 45.0, 0.12}), stopping_distance({v + 0.5, 9.0, 45.0, 0.12}));
    EXPECT_LT(stopping_distance({v, 9.0, 45.0, 0.12}), stopping_distance({v, 9.0, 45.0, 0.2}));
    EXPECT_GT(stopping_distance({v, 4.0, 45.0, 0.12}), stopping_distance({v, 9.0, 45.0, 0.12}));
  }
}

TEST(BrakedSpeedProfile, examples)
{
  const BrakeCommand cmd{9.0, 45.0, 1.0};
  EXPECT_EQ(braked_speed_profile(10.0, cmd, 0.5), 10.0);
  EXPECT_EQ(braked_speed_profile(20.0, {4.0, 45.0, 0.0}, 100.0), 0.0);

  const auto oracle = integrate_profile(10.0, 9.0, 45.0, 1.0, 1.2);
  EXPECT_NEAR(braked_speed_profile(10.0, cmd, 1.2), oracle.speed, 1e-6);
  // Ramp phase only: 10 - 0.5 * 45 * 0.2^2.
  EXPECT_NEAR(braked_speed_profile(10.0, cmd, 1.2), 9.1, 1e-12);
}

TEST(BrakedSpeedProfile, matches_numeric_oracle)
{
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> speed(0.5, 30.0);
  std::uniform_real_distribution<double> when(0.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double v0 = speed(rng);
    const double t = when(rng);
    const double d0 = (i % 3 == 0) ? 4.0 : 0.0;
    const BrakeCommand cmd{9.0, 45.0, 0.3};
    const auto oracle = integrate_profile(v0, 9.0, 45.0, 0.3, t, d0);
    EXPECT_NEAR(braked_speed_profile(v0, cmd, t, d0), oracle.speed, 1e-6);
  }
}

TEST(Advance, constant_speed_without_command)
{
  VehicleState s;
  s.heading = M_PI / 2.0;
  s.speed = 10.0;
  const auto next = advance(s, 0.0, 0.01, std::nullopt);
  EXPECT_NEAR(next.position.x, 0.0, 1e-12);
  EXPECT_NEAR(next.position.y, 0.1, 1e-12);
  EXPECT_EQ(next.speed, 10.0);
}

TEST(Advance, stopped_vehicle_is_unchanged)
{
  VehicleState s;
  s.position = {3.0, 4.0};
  const auto next = advance(s, 2.0, 0.01, BrakeCommand{9.0, 45.0, 0.0});
  EXPECT_EQ(next.position, s.position);
  EXPECT_EQ(next.speed, 0.0);
}

TEST(Advance, slot_sum_equals_stopping_distance)
{
  VehicleState s;
  s.speed = 16.667;
  const BrakeCommand cmd{9.0, 45.0, 0.0};
  double t = 0.0;
  while (s.speed > 0.0 && t < 10.0) {
    const auto next = advance(s, t, 0.01, cmd);
    EXPECT_GE(next.position.x, s.position.x);
    EXPECT_GE(next.speed, 0.0);
    s = next;
    t += 0.01;
  }
  EXPECT_NEAR(s.position.x, stopping_distance({16.667, 9.0, 45.0, 0.0}), 1e-6);
}

TEST(Advance, slot_sum_matches_single_integral)
{
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> speed(1.0, 25.0);
  std::uniform_real_distribution<double> start(0.0, 0.5);
  for (int i = 0; i < 50; ++i) {
    VehicleState s;
    s.speed = speed(rng);
    const BrakeCommand cmd{i % 2 ? 9.0 : 4.0, 45.0, start(rng)};
    const auto whole = advance(s, 0.0, 3.0, cmd);
    VehicleState sliced = s;
    for (int k = 0; k < 300; ++k) {
      sliced = advance(sliced, k * 0.01, 0.01, cmd);
    }
    EXPECT_NEAR(sliced.position.x, whole.position.x, 1e-9);
    EXPECT_NEAR(sliced.speed, whole.speed, 1e-9);
  }
}

TEST(Advance, handover_keeps_deceleration_continuous)
{
  VehicleState s;
  s.speed = 16.0;
  const std::vector<BrakeCommand> plan{{4.0, 45.0, 1.12}, {9.0, 45.0, 1.52}};
  double t = 0.0;
  double prev_decel = 0.0;
  const double dt = 0.01;
  while (t < 3.0 && s.speed > 0.0) {
    const auto next = advance(s, t, dt, plan);
    EXPECT_LE(std::abs(next.current_decel - prev_decel), 45.0 * dt + 1e-9);
    EXPECT_LE(next.current_decel, 9.0 + 1e-12);
    prev_decel = next.current_decel;
    s = next;
    t += dt;
  }
  // Partial fully applied before the handover: 1.12 + 4 / 45 < 1.52.
  VehicleState probe;
  probe.speed = 16.0;
  probe = advance(probe, 0.0, 1.52, plan);
  EXPECT_NEAR(probe.current_decel, 4.0, 1e-12);
}
