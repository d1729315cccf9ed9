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

#ifndef AVERTSIM__TYPES_HPP_
#define AVERTSIM__TYPES_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace avertsim
{

enum class OpponentType { Car, Bike };

inline std::string_view to_string(const OpponentType type)
{
  return type == OpponentType::Car ? "car" : "bike";
}

inline std::optional<OpponentType> parse_opponent_type(const std::string_view text)
{
  if (text == "car") return OpponentType::Car;
  if (text == "bike") return OpponentType::Bike;
  return std::nullopt;
}

/// Invalid user-supplied configuration or input data.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kph_to_mps(const double kph) { return kph / 3.6; }
inline constexpr double mps_to_kph(const double mps) { return mps * 3.6; }

}  // namespace avertsim

#endif  // AVERTSIM__TYPES_HPP_
