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

#ifndef AVERTSIM__SCENARIOS_HPP_
#define AVERTSIM__SCENARIOS_HPP_

#include "avertsim/dynamics.hpp"
#include "avertsim/geometry.hpp"
#include "avertsim/perception.hpp"
#include "avertsim/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace avertsim::scenarios
{

using dynamics::VehicleBody;
using dynamics::VehicleState;
using geometry::OrientedBox;
using geometry::Vec2;

enum class UseCase {
  SCP_RD_PC,
  SCP_LD_PC,
  SCP_LD_PC_ONEWAY,
  SCP_RD_B,
  SCP_LD_B,
  SCP_LD_B_ONEWAY,
};

/// ParkedCarRow is the single row along the ego road of scenario 35.
enum class Obstruction { ParkedCars, ParkedCarRow, Building };

std::string_view to_string(UseCase use_case);
std::optional<UseCase> parse_use_case(std::string_view text);
std::string_view to_string(Obstruction obstruction);
std::optional<Obstruction> parse_obstruction(std::string_view text);

/// Opponent arrives from the ego's right (RD) or left (LD).
bool from_right(UseCase use_case);

struct Scenario
{
  int id{0};
  UseCase use_case{UseCase::SCP_RD_PC};
  Obstruction obstruction{Obstruction::Building};
  double d_ego{0.0};  // ego path centerline to nearest obstruction face, m
  double d_opp{0.0};  // opponent path centerline to nearest obstruction face, m
  OpponentType opponent_type{OpponentType::Car};

  bool operator==(const Scenario &) const = default;
};

struct Variation
{
  double ego_speed{0.0};  // kph
  double opp_speed{0.0};  // kph
  double unbraked_impact_fraction{0.0};

  bool operator==(const Variation &) const = default;
};

struct VariationGrid
{
  std::vector<double> ego_speeds;  // kph
  std::vector<double> opp_speeds;  // kph
  std::vector<double> impact_fractions;

  /// Ego speed outermost, impact fraction innermost.
  std::vector<Variation> expand() const;
  std::size_t size() const
  {
    return ego_speeds.size() * opp_speeds.size() * impact_fractions.size();
  }
};

/// 5 x 5 x 5 = 125 cases.
VariationGrid car_grid();
/// 5 x 5 x 3 = 75 cases.
VariationGrid bike_grid();

/// The 35 obstructed crossing scenarios.
std::vector<Scenario> catalogue();
std::optional<Scenario> find_scenario(int id);

/// Layout constants not fixed by the scenario table.
struct LayoutParams
{
  VehicleBody ego_body{4.5, 1.8, 1500.0, 2.0};
  VehicleBody car_body{4.5, 1.8, 1500.0, 2.0};
  VehicleBody bike_body{1.9, 0.6, 100.0, 1.0};
  double min_start_distance{70.0};  // front bumper to conflict point along the path
  double building_extent{40.0};
  double parked_row_width{2.0};
  double parked_row_length{30.0};
  double parked_corner_clearance{5.0};  // no parking this close to the crossing lane
};

struct SceneLayout
{
  VehicleState ego_initial;
  VehicleState opp_initial;
  std::vector<OrientedBox> obstacles;
  Vec2 conflict_point;
  OpponentType opponent_type{OpponentType::Car};
  double requested_fraction{0.0};
  double nominal_contact_time{0.0};  // s, unbraked first contact
};

class InfeasibleVariation : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Ego drives along x = 0 heading +y; the opponent along y = 0 heading -x (RD)
/// or +x (LD). Start positions are solved so that, unbraked, the ego front
/// bumper meets the opponent's near flank while the ego centerline is abreast
/// of the point at `unbraked_impact_fraction` of the opponent length.
SceneLayout build_layout(const Scenario & s, const Variation & v, const LayoutParams & params = {});

/// Obstruction boxes for a scenario.
std::vector<OrientedBox> obstruction_boxes(const Scenario & s, const LayoutParams & params = {});

/// Whether an obstruction blocks the line from the onboard sensor mount to the
/// opponent recognition point at t = 0.
bool initial_sight_blocked(const SceneLayout & layout, const perception::SensorSpec & sensor);

/// CSV with header id,use_case,obstruction,d_ego,d_opp,opponent_type.
void write_catalogue(std::ostream & out, std::span<const Scenario> scenarios);
/// Throws ConfigError on malformed input or duplicate ids.
std::vector<Scenario> read_catalogue(std::istream & in);

}  // namespace avertsim::scenarios

#endif  // AVERTSIM__SCENARIOS_HPP_
