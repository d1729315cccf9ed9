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

#include "avertsim/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace avertsim::geometry
{

namespace
{
constexpr double kInteriorTolerance = 1e-9;

struct Interval
{
  double lo;
  double hi;
};

Interval project(const OrientedBox & box, const Vec2 & axis)
{
  const double c = box.center().dot(axis);
  const double r = 0.5 * box.length() * std::abs(box.forward().dot(axis)) +
                   0.5 * box.width() * std::abs(box.left().dot(axis));
  return {c - r, c + r};
}
}  // namespace

double normalize_angle(double angle)
{
  angle = std::remainder(angle, 2.0 * M_PI);
  if (angle <= -M_PI) {
    angle += 2.0 * M_PI;
  }
  return angle;
}

OrientedBox::OrientedBox(Vec2 center, double heading, double length, double width)
: center_(center), heading_(normalize_angle(heading)), length_(length), width_(width),
  forward_(Vec2::unit(heading))
{
  if (!(length > 0.0) || !(width > 0.0)) {
    throw std::invalid_argument("OrientedBox: length and width must be positive");
  }
  if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(heading)) {
    throw std::invalid_argument("OrientedBox: pose must be finite");
  }
}

std::array<Vec2, 4> OrientedBox::corners() const
{
  const Vec2 f = forward_ * (0.5 * length_);
  const Vec2 l = left() * (0.5 * width_);
  return {center_ + f + l, center_ - f + l, center_ - f - l, center_ + f - l};
}

Vec2 OrientedBox::to_local(const Vec2 & p) const
{
  const Vec2 d = p - center_;
  return {d.dot(forward_), d.dot(left())};
}

OrientedBox OrientedBox::translated(const Vec2 & offset) const
{
  OrientedBox out = *this;
  out.center_ = center_ + offset;
  return out;
}

bool boxes_overlap(const OrientedBox & a, const OrientedBox & b)
{
  for (const Vec2 & axis : {a.forward(), a.left(), b.forward(), b.left()}) {
    const Interval pa = project(a, axis);
    const Interval pb = project(b, axis);
    if (pa.hi < pb.lo || pb.hi < pa.lo) {
      return false;
    }
  }
  return true;
}

bool point_in_sector(const Vec2 & p, const Sector & s)
{
  const Vec2 d = p - s.apex;
  const double dist = d.norm();
  if (dist > s.radius) {
    return false;
  }
  if (dist == 0.0 || s.half_angle >= M_PI) {
    return true;
  }
  const double bearing = std::atan2(d.y, d.x);
  return std::abs(normalize_angle(bearing - s.heading)) <= s.half_angle;
}

bool segment_blocked(const Vec2 & from, const Vec2 & to, std::span<const OrientedBox> obstacles)
{
  if (from == to) {
    return false;
  }
  for (const auto & box : obstacles) {
    const Vec2 a = box.to_local(from);
    const Vec2 d = box.to_local(to) - a;
    const double hx = 0.5 * box.length();
    const double hy = 0.5 * box.width();

    // Liang-Barsky clip of a + t*d, t in [0, 1], against |x| <= hx, |y| <= hy.
    double t0 = 0.0;
    double t1 = 1.0;
    bool outside = false;
    const std::array<double, 4> p{-d.x, d.x, -d.y, d.y};
    const std::array<double, 4> q{a.x + hx, hx - a.x, a.y + hy, hy - a.y};
    for (std::size_t i = 0; i < 4 && !outside; ++i) {
      if (p[i] == 0.0) {
        outside = q[i] < 0.0;
      } else {
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
          t0 = std::max(t0, r);
        } else {
          t1 = std::min(t1, r);
        }
        outside = t0 > t1;
      }
    }
    if (outside) {
      continue;
    }
    // The chord of a convex box is interior everywhere except when it lies on
    // the boundary; its midpoint decides.
    const Vec2 mid = a + d * (0.5 * (t0 + t1));
    if (
      std::abs(mid.x) < hx - kInteriorTolerance && std::abs(mid.y) < hy - kInteriorTolerance &&
      (t1 - t0) * d.norm() > kInteriorTolerance) {
      return true;
    }
  }
  return false;
}

std::optional<double> first_overlap_time(
  const OrientedBox & a, const Vec2 & velocity_a, const OrientedBox & b, const Vec2 & velocity_b,
  const double horizon)
{
  const Vec2 w = velocity_b - velocity_a;
  double enter = 0.0;
  double exit = horizon;
  for (const Vec2 & axis : {a.forward(), a.left(), b.forward(), b.left()}) {
    const Interval pa = project(a, axis);
    const Interval pb = project(b, axis);
    const double s = w.dot(axis);
    // Overlap on this axis iff lo <= s * t <= hi.
    const double lo = pa.lo - pb.hi;
    const double hi = pa.hi - pb.lo;
    if (s == 0.0) {
      if (lo > 0.0 || hi < 0.0) {
        return std::nullopt;
      }
      continue;
    }
    const double ta = lo / s;
    const double tb = hi / s;
    enter = std::max(enter, std::min(ta, tb));
    exit = std::min(exit, std::max(ta, tb));
    if (enter > exit) {
      return std::nullopt;
    }
  }
  return enter;
}

}  // namespace avertsim::geometry
