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

#include "avertsim/perception.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avertsim::perception
{

void SensorSpec::validate() const
{
  if (!(range > 0.0)) {
    throw std::invalid_argument("sensor range must be positive");
  }
  if (!(full_angle > 0.0 && full_angle <= 360.0)) {
    throw std::invalid_argument("sensor angle must be in (0, 360]");
  }
  if (!(latency >= 0.0)) {
    throw std::invalid_argument("sensor latency must be non-negative");
  }
  if (name == SensorKind::V2X && (full_angle != 360.0 || occludable)) {
    throw std::invalid_argument("V2X sensor must be 360 degrees and not occludable");
  }
  if (name != SensorKind::V2X && !occludable) {
    throw std::invalid_argument("onboard sensors are occludable");
  }
}

SensorSpec SensorSpec::v2x()
{
  return {SensorKind::V2X, 360.0, 56.0, kAntennaOffset, DetectionRule::AntennaInFov, 0.3, false};
}

SensorSpec SensorSpec::minimal()
{
  return {SensorKind::Minimal, 100.0, 50.0, 1.40, DetectionRule::HalfLengthInFov, 0.2, true};
}

SensorSpec SensorSpec::medium()
{
  return {SensorKind::Medium, 120.0, 50.0, 0.25, DetectionRule::FrontInFov, 0.2, true};
}

SensorSpec SensorSpec::premium()
{
  return {SensorKind::Premium, 240.0, 50.0, 0.25, DetectionRule::FrontInFov, 0.2, true};
}

SensorSpec SensorSpec::defaults(const SensorKind kind)
{
  switch (kind) {
    case SensorKind::V2X:
      return v2x();
    case SensorKind::Minimal:
      return minimal();
    case SensorKind::Medium:
      return medium();
    case SensorKind::Premium:
      return premium();
  }
  throw std::invalid_argument("unknown sensor kind");
}

std::string_view to_string(const SensorKind kind)
{
  switch (kind) {
    case SensorKind::V2X:
      return "v2x";
    case SensorKind::Minimal:
      return "min";
    case SensorKind::Medium:
      return "mid";
    case SensorKind::Premium:
      return "prem";
  }
  return "?";
}

std::string_view to_string(const DetectionRule rule)
{
  switch (rule) {
    case DetectionRule::AntennaInFov:
      return "antenna";
    case DetectionRule::HalfLengthInFov:
      return "half_length";
    case DetectionRule::FrontInFov:
      return "front";
  }
  return "?";
}

std::optional<SensorKind> parse_sensor_kind(const std::string_view text)
{
  if (text == "v2x") return SensorKind::V2X;
  if (text == "min" || text == "minimal") return SensorKind::Minimal;
  if (text == "mid" || text == "medium") return SensorKind::Medium;
  if (text == "prem" || text == "premium") return SensorKind::Premium;
  return std::nullopt;
}

std::optional<DetectionRule> parse_detection_rule(const std::string_view text)
{
  if (text == "antenna") return DetectionRule::AntennaInFov;
  if (text == "half_length") return DetectionRule::HalfLengthInFov;
  if (text == "front") return DetectionRule::FrontInFov;
  return std::nullopt;
}

Vec2 recognition_point(const OrientedBox & opponent, const DetectionRule rule)
{
  switch (rule) {
    case DetectionRule::FrontInFov:
      return opponent.front_center();
    case DetectionRule::HalfLengthInFov:
      return opponent.center();
    case DetectionRule::AntennaInFov:
      return opponent.front_center() -
             opponent.forward() * std::min(kAntennaOffset, opponent.length());
  }
  return opponent.center();
}

Sector sensor_sector(const VehicleState & ego, const SensorSpec & spec)
{
  const double half_angle = std::min(M_PI, 0.5 * spec.full_angle * M_PI / 180.0);
  return {
    ego.front_center() - ego.direction() * spec.mount_offset, ego.heading, half_angle,
    spec.range};
}

bool is_visible(
  const VehicleState & ego, const OrientedBox & opponent, const SensorSpec & spec,
  std::span<const OrientedBox> obstacles)
{
  const Sector fov = sensor_sector(ego, spec);
  const Vec2 target = recognition_point(opponent, spec.detection_rule);
  if (!geometry::point_in_sector(target, fov)) {
    return false;
  }
  return !spec.occludable || !geometry::segment_blocked(fov.apex, target, obstacles);
}

DetectionTrack detect(
  const VehicleState & ego, const VehicleState & opponent, const SensorSpec & spec,
  std::span<const OrientedBox> obstacles, const double now, const DetectionTrack & track)
{
  DetectionTrack out = track;
  out.currently_visible = is_visible(ego, opponent.footprint(), spec, obstacles);
  if (out.currently_visible && !out.first_seen) {
    out.first_seen = now;
    out.available_from = now + spec.latency;
  }
  return out;
}

}  // namespace avertsim::perception
