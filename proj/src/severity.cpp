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

#include "avertsim/severity.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace avertsim::severity
{

namespace
{

constexpr double kGradientTolerance = 1e-8;
constexpr int kMaxNewtonIterations = 200;

double softplus(const double z)
{
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double logit_of_probability(const double p)
{
  // z such that 1 / (1 + exp(z)) = p
  return std::log((1.0 - p) / p);
}

std::vector<std::string> split(const std::string & line, const char delim)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == delim) {
    out.emplace_back();
  }
  return out;
}

std::string trim(std::string s)
{
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string & text, const std::string & what)
{
  double value = 0.0;
  const auto * end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("cannot parse " + what + " '" + text + "'");
  }
  return value;
}

struct NewtonStep
{
  double grad_a{0.0};
  double grad_b{0.0};
  Matrix2 info{};  // observed Fisher information
};

NewtonStep gradient_and_information(std::span<const CrashRecord> records, double a, double b)
{
  NewtonStep step;
  for (const auto & r : records) {
    const double v = r.impact_velocity;
    const double p = 1.0 / (1.0 + std::exp(a * v + b));
    const double residual = p - (r.severe ? 1.0 : 0.0);
    step.grad_a += residual * v;
    step.grad_b += residual;
    const double w = p * (1.0 - p);
    step.info[0][0] += w * v * v;
    step.info[0][1] += w * v;
    step.info[1][1] += w;
  }
  step.info[1][0] = step.info[0][1];
  return step;
}

std::optional<Matrix2> invert(const Matrix2 & m)
{
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
    return std::nullopt;
  }
  return Matrix2{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

}  // namespace

std::string_view to_string(const Target target)
{
  switch (target) {
    case Target::OpponentBike:
      return "opponent_bike";
    case Target::OpponentCarZoneB:
      return "opponent_car_zone_b";
    case Target::OpponentCarZoneAC:
      return "opponent_car_zone_ac";
    case Target::EgoFrontVsCar:
      return "ego_front_vs_car";
  }
  return "?";
}

std::optional<Target> parse_target(const std::string_view text)
{
  for (const auto t : {Target::OpponentBike, Target::OpponentCarZoneB, Target::OpponentCarZoneAC,
                       Target::EgoFrontVsCar}) {
    if (to_string(t) == text) {
      return t;
    }
  }
  return std::nullopt;
}

std::string_view to_string(const Zone zone)
{
  switch (zone) {
    case Zone::A:
      return "A";
    case Zone::B:
      return "B";
    case Zone::C:
      return "C";
  }
  return "?";
}

std::optional<Zone> parse_zone(const std::string_view text)
{
  if (text == "A" || text == "a") return Zone::A;
  if (text == "B" || text == "b") return Zone::B;
  if (text == "C" || text == "c") return Zone::C;
  return std::nullopt;
}

double severity_probability(const SeverityModel & model, const double v)
{
  return 1.0 / (1.0 + std::exp(model.slope_a * v + model.intercept_b));
}

SeverityModel model_from_anchors(const Target target, const Anchor first, const Anchor second)
{
  const double z1 = logit_of_probability(first.probability);
  const double z2 = logit_of_probability(second.probability);
  SeverityModel m;
  m.target = target;
  m.slope_a = (z2 - z1) / (second.velocity - first.velocity);
  m.intercept_b = z1 - m.slope_a * first.velocity;
  m.anchors = {first, second};
  return m;
}

SeverityModel default_model(const Target target)
{
  switch (target) {
    case Target::OpponentBike:
      return model_from_anchors(target, {20.0, 0.20}, {60.0, 0.80});
    case Target::OpponentCarZoneB:
      return model_from_anchors(target, {60.0, 0.30}, {100.0, 0.80});
    case Target::OpponentCarZoneAC:
      return model_from_anchors(target, {60.0, 0.17}, {100.0, 0.55});
    case Target::EgoFrontVsCar:
      // Below zone B at low velocities, above it from roughly 66 kph on.
      return model_from_anchors(target, {40.0, 0.11}, {90.0, 0.72});
  }
  throw std::invalid_argument("unknown severity target");
}

double log_likelihood(std::span<const CrashRecord> records, const double a, const double b)
{
  // log f = -softplus(z), log(1 - f) = z - softplus(z), z = a v + b
  double sum = 0.0;
  for (const auto & r : records) {
    const double z = a * r.impact_velocity + b;
    sum += (r.severe ? 0.0 : z) - softplus(z);
  }
  return sum;
}

SeverityModel fit_mle(std::span<const CrashRecord> records, const Target target)
{
  std::size_t positives = 0;
  double min_pos = std::numeric_limits<double>::infinity();
  double max_pos = -std::numeric_limits<double>::infinity();
  double min_neg = min_pos;
  double max_neg = max_pos;
  for (const auto & r : records) {
    if (r.severe) {
      ++positives;
      min_pos = std::min(min_pos, r.impact_velocity);
      max_pos = std::max(max_pos, r.impact_velocity);
    } else {
      min_neg = std::min(min_neg, r.impact_velocity);
      max_neg = std::max(max_neg, r.impact_velocity);
    }
  }
  const std::size_t negatives = records.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw InsufficientData("both severe and non-severe records are required");
  }
  if (std::min(min_pos, min_neg) == std::max(max_pos, max_neg)) {
    throw InsufficientData("all records share one impact velocity; the slope is not identifiable");
  }
  if (max_pos <= min_neg || max_neg <= min_pos) {
    throw SeparationError(
      "labels are perfectly separated by an impact velocity threshold; the likelihood is "
      "unbounded");
  }

  const double base_rate = static_cast<double>(positives) / static_cast<double>(records.size());
  double a = 0.0;
  double b = logit_of_probability(base_rate);
  double ll = log_likelihood(records, a, b);

  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    const NewtonStep step = gradient_and_information(records, a, b);
    if (std::max(std::abs(step.grad_a), std::abs(step.grad_b)) < kGradientTolerance) {
      SeverityModel m;
      m.target = target;
      m.slope_a = a;
      m.intercept_b = b;
      m.covariance = invert(step.info);
      m.n = records.size();
      return m;
    }
    const auto inv = invert(step.info);
    if (!inv) {
      break;
    }
    const double da = (*inv)[0][0] * step.grad_a + (*inv)[0][1] * step.grad_b;
    const double db = (*inv)[1][0] * step.grad_a + (*inv)[1][1] * step.grad_b;
    // Near the optimum the likelihood is flat to rounding; judge ascent with a tolerance.
    const double slack = 1e-12 * (1.0 + std::abs(ll));
    double scale = 1.0;
    double next_ll = log_likelihood(records, a + da, b + db);
    while (!(next_ll >= ll - slack) && scale > 1e-10) {
      scale *= 0.5;
      next_ll = log_likelihood(records, a + scale * da, b + scale * db);
    }
    a += scale * da;
    b += scale * db;
    ll = next_ll;
    if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a) > 1e6) {
      break;
    }
  }
  throw SeparationError("maximum likelihood iteration did not converge; the data are degenerate");
}

Band severity_band(const SeverityModel & model, const double v)
{
  if (!model.covariance) {
    throw MissingCovariance(
      std::string("model ") + std::string(to_string(model.target)) +
      " has no parameter covariance (anchored default)");
  }
  const auto & c = *model.covariance;
  const double f = severity_probability(model, v);
  const double quad = v * v * c[0][0] + 2.0 * v * c[0][1] + c[1][1];
  return {f, f * (1.0 - f) * std::sqrt(std::max(0.0, quad))};
}

Zone zone_for_fraction(const double fraction)
{
  if (fraction < 1.0 / 3.0) {
    return Zone::A;
  }
  if (fraction <= 2.0 / 3.0) {
    return Zone::B;
  }
  return Zone::C;
}

void ModelSet::set(SeverityModel model)
{
  switch (model.target) {
    case Target::OpponentBike:
      bike = std::move(model);
      break;
    case Target::OpponentCarZoneB:
      zone_b = std::move(model);
      break;
    case Target::OpponentCarZoneAC:
      zone_ac = std::move(model);
      break;
    case Target::EgoFrontVsCar:
      ego = std::move(model);
      break;
  }
}

const SeverityModel & ModelSet::get(const Target target) const
{
  switch (target) {
    case Target::OpponentBike:
      return bike;
    case Target::OpponentCarZoneB:
      return zone_b;
    case Target::OpponentCarZoneAC:
      return zone_ac;
    case Target::EgoFrontVsCar:
      return ego;
  }
  throw std::invalid_argument("unknown severity target");
}

Assessment assess(const ImpactOutcome & outcome, const OpponentType opponent, const ModelSet & models)
{
  if (!outcome.occurred) {
    return {};
  }
  const double v = outcome.impact_velocity;
  if (opponent == OpponentType::Bike) {
    return {0.0, severity_probability(models.bike, v)};
  }
  const Zone zone = outcome.zone.value_or(zone_for_fraction(outcome.impact_fraction));
  const auto & side = zone == Zone::B ? models.zone_b : models.zone_ac;
  return {severity_probability(models.ego, v), severity_probability(side, v)};
}

std::vector<CrashRecord> read_crash_records(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("crash record file is empty");
  }
  if (trim(line) != "impact_velocity_kph,severe,zone,opponent_type") {
    throw ConfigError("unexpected crash record header '" + trim(line) + "'");
  }
  std::vector<CrashRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(trim(line), ',');
    if (fields.size() != 4) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 4 fields");
    }
    CrashRecord r;
    r.impact_velocity = parse_double(trim(fields[0]), "impact velocity");
    if (r.impact_velocity < 0.0) {
      throw ConfigError("line " + std::to_string(line_no) + ": negative impact velocity");
    }
    const auto severe = trim(fields[1]);
    if (severe != "0" && severe != "1") {
      throw ConfigError("line " + std::to_string(line_no) + ": severe must be 0 or 1");
    }
    r.severe = severe == "1";
    const auto zone = trim(fields[2]);
    if (!zone.empty()) {
      r.zone = parse_zone(zone);
      if (!r.zone) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown zone '" + zone + "'");
      }
    }
    const auto type = parse_opponent_type(trim(fields[3]));
    if (!type) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown opponent type");
    }
    r.opponent_type = *type;
    records.push_back(r);
  }
  return records;
}

void write_crash_records(std::ostream & out, std::span<const CrashRecord> records)
{
  out << "impact_velocity_kph,severe,zone,opponent_type\n";
  for (const auto & r : records) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), r.impact_velocity);
    out << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << ','
        << (r.severe ? 1 : 0) << ',' << (r.zone ? to_string(*r.zone) : "") << ','
        << to_string(r.opponent_type) << '\n';
  }
}

std::string model_to_json(const SeverityModel & model)
{
  nlohmann::ordered_json doc;
  doc["target"] = to_string(model.target);
  doc["a"] = model.slope_a;
  doc["b"] = model.intercept_b;
  if (model.covariance) {
    const auto & c = *model.covariance;
    doc["cov"] = {{c[0][0], c[0][1]}, {c[1][0], c[1][1]}};
  } else {
    doc["cov"] = nullptr;
  }
  doc["n"] = model.n;
  auto anchors = nlohmann::ordered_json::array();
  for (const auto & an : model.anchors) {
    anchors.push_back({{"v_kph", an.velocity}, {"p", an.probability}});
  }
  doc["anchors"] = anchors;
  return doc.dump(2) + "\n";
}

namespace
{
SeverityModel model_from_document(const nlohmann::json & doc)
{
  SeverityModel m;
  const auto target = parse_target(doc.at("target").get<std::string>());
  if (!target) {
    throw ConfigError("unknown severity target '" + doc.at("target").get<std::string>() + "'");
  }
  m.target = *target;
  m.slope_a = doc.at("a").get<double>();
  m.intercept_b = doc.at("b").get<double>();
  if (doc.contains("cov") && !doc.at("cov").is_null()) {
    const auto & c = doc.at("cov");
    m.covariance = Matrix2{{{c.at(0).at(0).get<double>(), c.at(0).at(1).get<double>()},
                            {c.at(1).at(0).get<double>(), c.at(1).at(1).get<double>()}}};
  }
  m.n = doc.value("n", std::size_t{0});
  if (doc.contains("anchors")) {
    for (const auto & an : doc.at("anchors")) {
      m.anchors.push_back({an.at("v_kph").get<double>(), an.at("p").get<double>()});
    }
  }
  return m;
}
}  // namespace

std::vector<SeverityModel> models_from_json(const std::string_view text)
{
  try {
    const auto doc = nlohmann::json::parse(text);
    std::vector<SeverityModel> out;
    if (doc.is_object() && doc.contains("models")) {
      for (const auto & item : doc.at("models")) {
        out.push_back(model_from_document(item));
      }
    } else {
      out.push_back(model_from_document(doc));
    }
    return out;
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(std::string("invalid severity model document: ") + e.what());
  }
}

}  // namespace avertsim::severity
