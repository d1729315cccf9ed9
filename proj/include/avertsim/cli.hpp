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

#ifndef AVERTSIM__CLI_HPP_
#define AVERTSIM__CLI_HPP_

#include "avertsim/engine.hpp"
#include "avertsim/scenarios.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace avertsim::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;

struct SystemSelection
{
  engine::System system{engine::System::TwoStage};
  perception::SensorKind sensors{perception::SensorKind::Medium};
  double ttc_threshold{2.0};  // ignored for AEB-only
};

/// The twelve standard selections.
std::vector<SystemSelection> default_selections();

/// Everything one `run` invocation needs. Loaded from a JSON manifest and then
/// overridden from the command line.
struct RunManifest
{
  std::optional<std::vector<int>> scenario_ids;  // nullopt = all
  std::optional<std::string> scenario_file;
  std::vector<SystemSelection> systems{default_selections()};
  decision::BrakeStageConfig partial{decision::BrakeStageConfig::partial()};
  decision::BrakeStageConfig aeb{decision::BrakeStageConfig::aeb()};
  perception::SensorSpec v2x{perception::SensorSpec::v2x()};
  perception::SensorSpec minimal{perception::SensorSpec::minimal()};
  perception::SensorSpec medium{perception::SensorSpec::medium()};
  perception::SensorSpec premium{perception::SensorSpec::premium()};
  double slot{0.01};
  std::optional<std::string> models_file;
  std::string out_dir{"avertsim_out"};
  unsigned workers{1};
  std::uint64_t seed{1};
  scenarios::VariationGrid car_grid{scenarios::car_grid()};
  scenarios::VariationGrid bike_grid{scenarios::bike_grid()};
};

/// One validated RunConfig per selection, with the manifest's stage and sensor
/// parameters applied. Throws ConfigError.
std::vector<engine::RunConfig> build_configs(const RunManifest & manifest);

/// Parses a manifest document; relative paths stay as given. Throws ConfigError.
RunManifest manifest_from_json(const std::string & text);

/// Entry point of the command line tool; returns the process exit status.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace avertsim::cli

#endif  // AVERTSIM__CLI_HPP_
