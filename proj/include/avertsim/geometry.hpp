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

#ifndef AVERTSIM__GEOMETRY_HPP_
#define AVERTSIM__GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <span>

namespace avertsim::geometry
{

// World frame is right-handed, x/y in meters, headings counterclockwise from +x.

struct Vec2
{
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2 & o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2 & o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(const double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2 &) const = default;

  constexpr double dot(const Vec2 & o) const { return x * o.x + y * o.y; }
  constexpr double cross(const Vec2 & o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }

  static Vec2 unit(const double heading) { return {std::cos(heading), std::sin(heading)}; }
};

inline constexpr Vec2 operator*(const double s, const Vec2 & v) { return v * s; }

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

class OrientedBox
{
public:
  /// Throws std::invalid_argument on non-positive dimensions or non-finite pose.
  OrientedBox(Vec2 center, double heading, double length, double width);

  const Vec2 & center() const { return center_; }
  double heading() const { return heading_; }
  double length() const { return length_; }
  double width() const { return width_; }

  /// Unit vector along the length (forward).
  const Vec2 & forward() const { return forward_; }
  /// Unit vector along the width (to the left of forward).
  Vec2 left() const { return {-forward_.y, forward_.x}; }

  Vec2 front_center() const { return center_ + forward_ * (0.5 * length_); }
  std::array<Vec2, 4> corners() const;

  /// Body-frame coordinates of a world point (x forward, y left).
  Vec2 to_local(const Vec2 & p) const;

  OrientedBox translated(const Vec2 & offset) const;

private:
  Vec2 center_;
  double heading_;
  double length_;
  double width_;
  Vec2 forward_;
};

struct Sector
{
  Vec2 apex;
  double heading{0.0};
  /// In (0, pi]; pi means an omnidirectional range disk.
  double half_angle{M_PI};
  double radius{1.0};
};

/// Closed-set overlap: touching boxes overlap.
bool boxes_overlap(const OrientedBox & a, const OrientedBox & b);

bool point_in_sector(const Vec2 & p, const Sector & s);

/// True iff the open segment (from, to) passes through the interior of any obstacle.
/// Grazing an edge or a corner does not block.
bool segment_blocked(const Vec2 & from, const Vec2 & to, std::span<const OrientedBox> obstacles);

/// Earliest t in [0, horizon] at which the two boxes overlap when translated with
/// constant velocities (no rotation). Exact: solves the separating-axis
/// conditions as linear inequalities in t.
std::optional<double> first_overlap_time(
  const OrientedBox & a, const Vec2 & velocity_a, const OrientedBox & b, const Vec2 & velocity_b,
  double horizon);

}  // namespace avertsim::geometry

#endif  // AVERTSIM__GEOMETRY_HPP_
