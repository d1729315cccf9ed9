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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace
{

using avertsim::decision::BrakeStageConfig;
using avertsim::decision::CollisionPrediction;
using avertsim::decision::evaluate_stage;
using avertsim::decision::InterventionState;
using avertsim::decision::intervene;
using avertsim::decision::predict_collision;
using avertsim::decision::Stage;
using avertsim::dynamics::advance;
using avertsim::dynamics::stopping_distance;
using avertsim::dynamics::VehicleState;
using avertsim::geometry::boxes_overlap;
using avertsim::geometry::Vec2;

VehicleState car_at(const Vec2 p, const double heading, const double speed)
{
  VehicleState s;
  s.position = p;
  s.heading = heading;
  s.speed = speed;
  return s;
}

// 1 ms constant-velocity sweep.
std::optional<double> sweep_oracle(const VehicleState & a, const VehicleState & b, const double horizon)
{
  const auto fa = a.footprint();
  const auto fb = b.footprint();
  for (int k = 0; k * 1e-3 <= horizon; ++k) {
    const double t = k * 1e-3;
    if (boxes_overlap(fa.translated(a.velocity() * t), fb.translated(b.velocity() * t))) {
      return t;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST(PredictCollision, crossing_example_matches_sweep)
{
  const auto ego = car_at({0.0, -20.0}, M_PI / 2.0, 10.0);
  const auto opp = car_at({20.0, 0.0}, M_PI, 10.0);
  const auto pred = predict_collision(ego, opp, 5.0);
  const auto oracle = sweep_oracle(ego, opp, 5.0);
  ASSERT_TRUE(pred.crash_predicted);
  ASSERT_TRUE(oracle.has_value());
  EXPECT_NEAR(pred.ttc, *oracle, 1e-3);
  EXPECT_NEAR(pred.x_crash, 10.0 * pred.ttc, 1e-12);
}

TEST(PredictCollision, parallel_paths_on_distinct_lanes)
{
  const auto ego = car_at({0.0, 0.0}, M_PI / 2.0, 15.0);
  const auto other = car_at({3.5, 10.0}, M_PI / 2.0, 5.0);
  EXPECT_FALSE(predict_collision(ego, other).crash_predicted);
}

TEST(PredictCollision, already_overlapping)
{
  const auto ego = car_at({0.0, 0.0}, M_PI / 2.0, 15.0);
  const auto opp = car_at({1.0, 1.0}, M_PI, 10.0);
  const auto pred = predict_collision(ego, opp);
  EXPECT_TRUE(pred.crash_predicted);
  EXPECT_EQ(pred.ttc, 0.0);
  EXPECT_EQ(pred.x_crash, 0.0);
}

TEST(PredictCollision, beyond_horizon_is_no_crash)
{
  const auto ego = car_at({0.0, -80.0}, M_PI / 2.0, 10.0);
  const auto opp = car_at({80.0, 0.0}, M_PI, 10.0);
  EXPECT_FALSE(predict_collision(ego, opp, 5.0).crash_predicted);
  EXPECT_TRUE(predict_collision(ego, opp, 10.0).crash_predicted);
}

TEST(PredictCollision, random_crossings_match_sweep)
{
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> speed(1.0, 20.0);
  std::uniform_real_distribution<double> dist(5.0, 60.0);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  int crashes = 0;
  for (int i = 0; i < 300; ++i) {
    const double h = ang(rng);
    const auto ego = car_at(Vec2::unit(h) * -dist(rng), h, speed(rng));
    const double h2 = ang(rng);
    const auto opp = car_at(Vec2::unit(h2) * -dist(rng), h2, speed(rng));
    const auto pred = predict_collision(ego, opp, 5.0);
    const auto oracle = sweep_oracle(ego, opp, 5.0);
    if (oracle) {
      ++crashes;
      ASSERT_TRUE(pred.crash_predicted);
      EXPECT_LE(pred.ttc, *oracle + 1e-12);
      EXPECT_GT(pred.ttc, *oracle - 1e-3 - 1e-12);
    }
  }
  EXPECT_GT(crashes, 50);
}

TEST(EvaluateStage, examples)
{
  const double v = 13.889;
  const CollisionPrediction pred{true, 20.0 / v, 20.0};
  ASSERT_NEAR(stopping_distance({v, 4.0, 45.0, 0.12}), 26.395, 1e-3);
  EXPECT_TRUE(evaluate_stage(pred, v, BrakeStageConfig::partial(2.0), true));
  EXPECT_FALSE(evaluate_stage(pred, v, BrakeStageConfig::partial(1.25), true));
  EXPECT_FALSE(evaluate_stage(pred, v, BrakeStageConfig::partial(2.0), false));
  EXPECT_FALSE(evaluate_stage({}, v, BrakeStageConfig::partial(2.0), true));
}

TEST(EvaluateStage, ties_satisfy_both_conditions)
{
  const double v = 10.0;
  const auto cfg = BrakeStageConfig::aeb();
  const double x_stop = stopping_distance({v, cfg.target_decel, cfg.jerk, cfg.application_delay});
  EXPECT_TRUE(evaluate_stage({true, 1.25, x_stop}, v, cfg, true));
  EXPECT_FALSE(evaluate_stage({true, 1.25, std::nextafter(x_stop, 1e9)}, v, cfg, true));
  EXPECT_FALSE(evaluate_stage({true, std::nextafter(1.25, 2.0), 1.0}, v, cfg, true));
}

TEST(BrakeStageConfig, defaults_and_validation)
{
  const auto p = BrakeStageConfig::partial(1.5);
  EXPECT_EQ(p.stage, Stage::Partial);
  EXPECT_EQ(p.ttc_threshold, 1.5);
  EXPECT_EQ(p.target_decel, 4.0);
  EXPECT_TRUE(p.allow_v2x);
  const auto a = BrakeStageConfig::aeb();
  EXPECT_EQ(a.ttc_threshold, 1.25);
  EXPECT_EQ(a.target_decel, 9.0);
  EXPECT_FALSE(a.allow_v2x);
  EXPECT_NO_THROW(p.validate());
  EXPECT_NO_THROW(a.validate());

  auto bad = a;
  bad.allow_v2x = true;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.target_decel = 5.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Intervene, nothing_fires)
{
  const InterventionState empty;
  const auto out = intervene(
    empty, false, false, 1.0, BrakeStageConfig::partial(), BrakeStageConfig::aeb());
  EXPECT_EQ(out, empty);
}

TEST(Intervene, triggers_are_latched)
{
  const auto p = BrakeStageConfig::partial();
  const auto a = BrakeStageConfig::aeb();
  auto s = intervene({}, true, false, 1.0, p, a);
  s = intervene(s, true, false, 1.5, p, a);
  EXPECT_EQ(s.partial_triggered_at, 1.0);
  EXPECT_NEAR(s.active_command->start_time, 1.12, 1e-12);
  s = intervene(s, false, false, 2.0, p, a);
  EXPECT_TRUE(s.active_command.has_value());
}

TEST(Intervene, aeb_takes_priority_with_continuous_handover)
{
  const auto p = BrakeStageConfig::partial();
  const auto a = BrakeStageConfig::aeb();
  auto s = intervene({}, true, false, 1.0, p, a);
  s = intervene(s, false, true, 1.4, p, a);
  ASSERT_TRUE(s.active_command.has_value());
  EXPECT_EQ(s.active_command->target_decel, 9.0);
  EXPECT_NEAR(s.active_command->start_time, 1.52, 1e-12);
  ASSERT_EQ(s.brake_plan().size, 2U);

  // Profile oracle: step the plan and check the deceleration never jumps.
  VehicleState ego;
  ego.speed = 15.0;
  double prev = 0.0;
  for (int k = 0; k < 300; ++k) {
    const double t = k * 0.005;
    ego = advance(ego, t, 0.005, s.brake_plan().view());
    EXPECT_LE(std::abs(ego.current_decel - prev), 45.0 * 0.005 + 1e-9);
    prev = ego.current_decel;
  }
  // At 1.52 the partial is at 45 * 0.4 = 18 -> clamped at 4; AEB then ramps from 4.
  VehicleState probe;
  probe.speed = 15.0;
  probe = advance(probe, 0.0, 1.53, s.brake_plan().view());
  EXPECT_NEAR(probe.current_decel, 4.0 + 45.0 * 0.01, 1e-9);
}

TEST(Intervene, aeb_only_is_a_single_command)
{
  const auto s = intervene({}, false, true, 2.0, BrakeStageConfig::partial(), BrakeStageConfig::aeb());
  ASSERT_EQ(s.brake_plan().size, 1U);
  EXPECT_EQ(s.brake_plan().view().front().target_decel, 9.0);
}

TEST(Intervene, same_slot_trigger_drops_partial)
{
  const auto s = intervene({}, true, true, 2.0, BrakeStageConfig::partial(), BrakeStageConfig::aeb());
  ASSERT_EQ(s.brake_plan().size, 1U);
  EXPECT_EQ(s.active_command->target_decel, 9.0);
}
