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

#ifndef AVERTSIM__PERCEPTION_HPP_
#define AVERTSIM__PERCEPTION_HPP_

#include "avertsim/dynamics.hpp"
#include "avertsim/geometry.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace avertsim::perception
{

using dynamics::VehicleState;
using geometry::OrientedBox;
using geometry::Sector;
using geometry::Vec2;

enum class SensorKind { V2X, Minimal, Medium, Premium };

enum class DetectionRule { AntennaInFov, HalfLengthInFov, FrontInFov };

/// Distance of the V2X antenna behind the front bumper.
inline constexpr double kAntennaOffset = 3.75;

struct SensorSpec
{
  SensorKind name{SensorKind::Medium};
  double full_angle{120.0};   // degrees, (0, 360]
  double range{50.0};         // m
  double mount_offset{0.25};  // m rearward from the front bumper, on the centerline
  DetectionRule detection_rule{DetectionRule::FrontInFov};
  double latency{0.2};  // s
  bool occludable{true};

  /// Throws std::invalid_argument when the invariants are violated.
  void validate() const;

  static SensorSpec v2x();
  static SensorSpec minimal();
  static SensorSpec medium();
  static SensorSpec premium();
  static SensorSpec defaults(SensorKind kind);
};

std::string_view to_string(SensorKind kind);
std::string_view to_string(DetectionRule rule);
/// Accepts "v2x", "min"/"minimal", "mid"/"medium", "prem"/"premium".
std::optional<SensorKind> parse_sensor_kind(std::string_view text);
std::optional<DetectionRule> parse_detection_rule(std::string_view text);

struct DetectionTrack
{
  std::optional<double> first_seen;
  std::optional<double> available_from;
  bool currently_visible{false};

  bool available(const double now) const { return available_from && now >= *available_from; }
};

/// Point of the opponent body that has to enter the field of view. The antenna
/// sits kAntennaOffset behind the front bumper, clamped to the rear bumper for
/// bodies shorter than that.
Vec2 recognition_point(const OrientedBox & opponent, DetectionRule rule);

/// Field of view of `spec` mounted on `ego`.
Sector sensor_sector(const VehicleState & ego, const SensorSpec & spec);

bool is_visible(
  const VehicleState & ego, const OrientedBox & opponent, const SensorSpec & spec,
  std::span<const OrientedBox> obstacles);

/// One detection update. The track latches: once seen, first_seen and
/// available_from never change.
DetectionTrack detect(
  const VehicleState & ego, const VehicleState & opponent, const SensorSpec & spec,
  std::span<const OrientedBox> obstacles, double now, const DetectionTrack & track);

}  // namespace avertsim::perception

#endif  // AVERTSIM__PERCEPTION_HPP_
