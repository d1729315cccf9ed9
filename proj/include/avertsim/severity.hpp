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

#ifndef AVERTSIM__SEVERITY_HPP_
#define AVERTSIM__SEVERITY_HPP_

#include "avertsim/types.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace avertsim::severity
{

enum class Target { OpponentBike, OpponentCarZoneB, OpponentCarZoneAC, EgoFrontVsCar };

enum class Zone { A, B, C };

std::string_view to_string(Target target);
std::optional<Target> parse_target(std::string_view text);
std::string_view to_string(Zone zone);
std::optional<Zone> parse_zone(std::string_view text);

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct Anchor
{
  double velocity;     // kph
  double probability;
};

/// Probability of a severe or fatal injury as a function of impact velocity
/// v (kph): f(v) = 1 / (1 + exp(a v + b)).
struct SeverityModel
{
  Target target{Target::OpponentBike};
  double slope_a{0.0};
  double intercept_b{0.0};
  std::optional<Matrix2> covariance;  // of (a, b), from a fit
  std::size_t n{0};                   // records behind the fit, 0 for anchored models
  std::vector<Anchor> anchors;
};

class SeparationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class MissingCovariance : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct CrashRecord
{
  double impact_velocity{0.0};  // kph
  bool severe{false};
  std::optional<Zone> zone;
  OpponentType opponent_type{OpponentType::Car};
};

struct ImpactOutcome
{
  bool occurred{false};
  double time{0.0};              // s, simulation time of first contact
  double impact_velocity{0.0};   // kph
  double impact_fraction{0.0};   // along the opponent body, 0 = front, 1 = rear
  std::optional<Zone> zone;      // car opponents only
};

double severity_probability(const SeverityModel & model, double v);

/// Solves (a, b) so the curve passes through both anchors.
SeverityModel model_from_anchors(Target target, Anchor first, Anchor second);

/// Anchor-calibrated default for each target.
SeverityModel default_model(Target target);

/// Bernoulli log-likelihood of (a, b) over the records.
double log_likelihood(std::span<const CrashRecord> records, double a, double b);

/// Maximum likelihood fit by damped Newton iteration. The returned covariance
/// is the inverse observed Fisher information at the optimum.
/// Throws InsufficientData when a label class is empty or all velocities are
/// equal, SeparationError when the labels are separable by a velocity threshold.
SeverityModel fit_mle(std::span<const CrashRecord> records, Target target);

struct Band
{
  double probability;
  double std_dev;
};

/// Delta-method band: sigma = f (1 - f) sqrt(g^T C g), g = (v, 1).
/// Throws MissingCovariance for models without a fitted covariance.
Band severity_band(const SeverityModel & model, double v);

/// [0, 1/3) -> A, [1/3, 2/3] -> B, (2/3, 1] -> C.
Zone zone_for_fraction(double fraction);

struct ModelSet
{
  SeverityModel bike = default_model(Target::OpponentBike);
  SeverityModel zone_b = default_model(Target::OpponentCarZoneB);
  SeverityModel zone_ac = default_model(Target::OpponentCarZoneAC);
  SeverityModel ego = default_model(Target::EgoFrontVsCar);

  void set(SeverityModel model);
  const SeverityModel & get(Target target) const;
};

struct Assessment
{
  double p_severe_ego{0.0};
  double p_severe_opp{0.0};
};

Assessment assess(const ImpactOutcome & outcome, OpponentType opponent, const ModelSet & models);

/// Reads `impact_velocity_kph,severe,zone,opponent_type` records. Throws ConfigError.
std::vector<CrashRecord> read_crash_records(std::istream & in);
void write_crash_records(std::ostream & out, std::span<const CrashRecord> records);

/// Human-readable JSON documents with fields target, a, b, cov, n, anchors.
std::string model_to_json(const SeverityModel & model);
/// Accepts a single model document or {"models": [...]}. Throws ConfigError.
std::vector<SeverityModel> models_from_json(std::string_view text);

}  // namespace avertsim::severity

#endif  // AVERTSIM__SEVERITY_HPP_
