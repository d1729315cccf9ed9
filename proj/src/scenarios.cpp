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

#include "avertsim/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace avertsim::scenarios
{

namespace
{

constexpr std::array<UseCase, 6> kUseCases{
  UseCase::SCP_RD_PC, UseCase::SCP_LD_PC, UseCase::SCP_LD_PC_ONEWAY,
  UseCase::SCP_RD_B,  UseCase::SCP_LD_B,  UseCase::SCP_LD_B_ONEWAY};

OrientedBox axis_aligned(const double x0, const double x1, const double y0, const double y1)
{
  return OrientedBox(
    {0.5 * (x0 + x1), 0.5 * (y0 + y1)}, 0.0, std::abs(x1 - x0), std::abs(y1 - y0));
}

std::string format_number(const double value)
{
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string trim(std::string s)
{
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string & text, const std::size_t line_no)
{
  double value = 0.0;
  const auto * end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("scenario line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(const UseCase use_case)
{
  switch (use_case) {
    case UseCase::SCP_RD_PC:
      return "SCP_RD_PC";
    case UseCase::SCP_LD_PC:
      return "SCP_LD_PC";
    case UseCase::SCP_LD_PC_ONEWAY:
      return "SCP_LD_PC_ONEWAY";
    case UseCase::SCP_RD_B:
      return "SCP_RD_B";
    case UseCase::SCP_LD_B:
      return "SCP_LD_B";
    case UseCase::SCP_LD_B_ONEWAY:
      return "SCP_LD_B_ONEWAY";
  }
  return "?";
}

std::optional<UseCase> parse_use_case(const std::string_view text)
{
  for (const auto u : kUseCases) {
    if (to_string(u) == text) {
      return u;
    }
  }
  return std::nullopt;
}

std::string_view to_string(const Obstruction obstruction)
{
  switch (obstruction) {
    case Obstruction::ParkedCars:
      return "parked_cars";
    case Obstruction::ParkedCarRow:
      return "parked_car_row";
    case Obstruction::Building:
      return "building";
  }
  return "?";
}

std::optional<Obstruction> parse_obstruction(const std::string_view text)
{
  for (const auto o : {Obstruction::ParkedCars, Obstruction::ParkedCarRow, Obstruction::Building}) {
    if (to_string(o) == text) {
      return o;
    }
  }
  return std::nullopt;
}

bool from_right(const UseCase use_case)
{
  return use_case == UseCase::SCP_RD_PC || use_case == UseCase::SCP_RD_B;
}

std::vector<Variation> VariationGrid::expand() const
{
  std::vector<Variation> out;
  out.reserve(size());
  for (const double ego : ego_speeds) {
    for (const double opp : opp_speeds) {
      for (const double fraction : impact_fractions) {
        out.push_back({ego, opp, fraction});
      }
    }
  }
  return out;
}

VariationGrid car_grid()
{
  return {{20, 30, 40, 50, 60}, {20, 30, 40, 50, 60}, {0.0, 0.25, 0.5, 0.75, 1.0}};
}

VariationGrid bike_grid()
{
  return {{20, 30, 40, 50, 60}, {5, 10, 15, 20, 25}, {0.0, 0.5, 1.0}};
}

std::vector<Scenario> catalogue()
{
  using enum UseCase;
  using enum Obstruction;
  constexpr auto car = OpponentType::Car;
  constexpr auto bike = OpponentType::Bike;
  const std::array<double, 3> near{3.25, 3.75, 4.25};
  const std::array<double, 3> far{6.75, 7.25, 7.75};

  std::vector<Scenario> out;
  out.push_back({1, SCP_RD_PC, ParkedCars, 1.925, 5.425, car});
  int id = 2;
  for (const double de : near) {
    for (const double dp : far) {
      out.push_back({id++, SCP_RD_PC, Building, de, dp, car});
    }
  }
  out.push_back({11, SCP_LD_PC, ParkedCars, 5.425, 1.925, car});
  id = 12;
  for (const double de : far) {
    for (const double dp : near) {
      out.push_back({id++, SCP_LD_PC, Building, de, dp, car});
    }
  }
  out.push_back({21, SCP_LD_PC_ONEWAY, ParkedCars, 1.75, 1.75, car});
  id = 22;
  for (const double de : near) {
    for (const double dp : near) {
      out.push_back({id++, SCP_LD_PC_ONEWAY, Building, de, dp, car});
    }
  }
  out.push_back({31, SCP_RD_B, Building, 4.2, 2.7, bike});
  out.push_back({32, SCP_RD_B, Building, 3.25, 3.75, bike});
  out.push_back({33, SCP_LD_B, Building, 6.75, 2.125, bike});
  out.push_back({34, SCP_LD_B_ONEWAY, Building, 3.25, 2.125, bike});
  out.push_back({35, SCP_RD_PC, ParkedCarRow, 1.65, 20.0, car});
  return out;
}

std::optional<Scenario> find_scenario(const int id)
{
  for (const auto & s : catalogue()) {
    if (s.id == id) {
      return s;
    }
  }
  return std::nullopt;
}

std::vector<OrientedBox> obstruction_boxes(const Scenario & s, const LayoutParams & params)
{
  // Approach quadrant: y < 0 (ego side), x > 0 for RD and x < 0 for LD.
  const double side = from_right(s.use_case) ? 1.0 : -1.0;
  const double x_near = side * s.d_ego;
  const double y_near = -s.d_opp;
  std::vector<OrientedBox> boxes;
  switch (s.obstruction) {
    case Obstruction::Building: {
      const double e = params.building_extent;
      boxes.push_back(axis_aligned(x_near, x_near + side * e, y_near - e, y_near));
      break;
    }
    case Obstruction::ParkedCars:
    case Obstruction::ParkedCarRow: {
      const double w = params.parked_row_width;
      const double l = params.parked_row_length;
      // Each row stops short of the other road's parking lane by the corner clearance.
      const double gap = w + params.parked_corner_clearance;
      boxes.push_back(axis_aligned(x_near, x_near + side * w, y_near - gap - l, y_near - gap));
      if (s.obstruction == Obstruction::ParkedCars) {
        boxes.push_back(
          axis_aligned(x_near + side * gap, x_near + side * (gap + l), y_near - w, y_near));
      }
      break;
    }
  }
  return boxes;
}

SceneLayout build_layout(const Scenario & s, const Variation & v, const LayoutParams & params)
{
  if (!(v.ego_speed > 0.0) || !(v.opp_speed > 0.0)) {
    throw InfeasibleVariation("variation speeds must be positive");
  }
  if (!(v.unbraked_impact_fraction >= 0.0 && v.unbraked_impact_fraction <= 1.0)) {
    throw InfeasibleVariation("unbraked impact fraction must be in [0, 1]");
  }
  if (!(s.d_ego > 0.0) || !(s.d_opp > 0.0)) {
    throw InfeasibleVariation("scenario distances must be positive");
  }

  const VehicleBody & opp_body =
    s.opponent_type == OpponentType::Bike ? params.bike_body : params.car_body;
  const double v_ego = kph_to_mps(v.ego_speed);
  const double v_opp = kph_to_mps(v.opp_speed);
  const double opp_dir = from_right(s.use_case) ? -1.0 : 1.0;  // x component

  // At contact the ego front is on the opponent's near flank (y = -w/2) and the
  // point at fraction f behind the opponent front lies on x = 0.
  const double f_len = v.unbraked_impact_fraction * opp_body.length;
  const double ego_front_start = 0.5 * opp_body.width;  // + v_ego * T
  const double opp_front_start = -f_len;                // + v_opp * T
  const double contact_time = std::max(
    (params.min_start_distance - ego_front_start) / v_ego,
    (params.min_start_distance - opp_front_start) / v_opp);

  SceneLayout layout;
  layout.opponent_type = s.opponent_type;
  layout.requested_fraction = v.unbraked_impact_fraction;
  layout.nominal_contact_time = contact_time;
  layout.conflict_point = {0.0, 0.0};

  auto & ego = layout.ego_initial;
  ego.body = params.ego_body;
  ego.heading = M_PI / 2.0;
  ego.speed = v_ego;
  ego.position = {0.0, -(ego_front_start + v_ego * contact_time) - 0.5 * ego.body.length};

  auto & opp = layout.opp_initial;
  opp.body = opp_body;
  opp.heading = opp_dir > 0.0 ? 0.0 : M_PI;
  opp.speed = v_opp;
  const double center_at_contact = -opp_dir * (0.5 * opp_body.length - f_len);
  opp.position = {center_at_contact - opp_dir * v_opp * contact_time, 0.0};

  layout.obstacles = obstruction_boxes(s, params);
  for (const auto & box : layout.obstacles) {
    if (
      geometry::boxes_overlap(box, ego.footprint()) ||
      geometry::boxes_overlap(box, opp.footprint())) {
      throw InfeasibleVariation(
        "scenario " + std::to_string(s.id) + ": start position inside the obstruction");
    }
  }
  return layout;
}

bool initial_sight_blocked(const SceneLayout & layout, const perception::SensorSpec & sensor)
{
  const auto fov = perception::sensor_sector(layout.ego_initial, sensor);
  const auto target =
    perception::recognition_point(layout.opp_initial.footprint(), sensor.detection_rule);
  return geometry::segment_blocked(fov.apex, target, layout.obstacles);
}

void write_catalogue(std::ostream & out, std::span<const Scenario> scenarios)
{
  out << "id,use_case,obstruction,d_ego,d_opp,opponent_type\n";
  for (const auto & s : scenarios) {
    out << s.id << ',' << to_string(s.use_case) << ',' << to_string(s.obstruction) << ','
        << format_number(s.d_ego) << ',' << format_number(s.d_opp) << ','
        << to_string(s.opponent_type) << '\n';
  }
}

std::vector<Scenario> read_catalogue(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line) || trim(line) != "id,use_case,obstruction,d_ego,d_opp,opponent_type") {
    throw ConfigError("scenario file: missing or unexpected header");
  }
  std::vector<Scenario> out;
  std::set<int> ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> f;
    std::istringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) {
      f.push_back(trim(field));
    }
    if (f.size() != 6) {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": expected 6 fields");
    }
    Scenario s;
    s.id = static_cast<int>(parse_number(f[0], line_no));
    const auto use_case = parse_use_case(f[1]);
    const auto obstruction = parse_obstruction(f[2]);
    const auto type = parse_opponent_type(f[5]);
    if (!use_case || !obstruction || !type) {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": unknown enum value");
    }
    s.use_case = *use_case;
    s.obstruction = *obstruction;
    s.d_ego = parse_number(f[3], line_no);
    s.d_opp = parse_number(f[4], line_no);
    s.opponent_type = *type;
    if (!(s.d_ego > 0.0) || !(s.d_opp > 0.0)) {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": distances must be positive");
    }
    if (!ids.insert(s.id).second) {
      throw ConfigError("scenario file: duplicate id " + std::to_string(s.id));
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace avertsim::scenarios
