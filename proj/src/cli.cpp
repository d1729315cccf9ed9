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

#include "avertsim/cli.hpp"

#include "avertsim/experiment.hpp"
#include "avertsim/report.hpp"
#include "avertsim/severity.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace avertsim::cli
{

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace
{

std::string read_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path & path, const std::string & content)
{
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write '" + path.string() + "'");
  }
  out << content;
}

void check_keys(const json & obj, std::initializer_list<std::string_view> allowed, const std::string & where)
{
  for (const auto & item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError("manifest: unknown key '" + item.key() + "' in " + where);
    }
  }
}

void apply_stage(const json & doc, decision::BrakeStageConfig & stage, const std::string & where)
{
  check_keys(doc, {"ttc_threshold", "target_decel", "jerk", "application_delay"}, where);
  stage.ttc_threshold = doc.value("ttc_threshold", stage.ttc_threshold);
  stage.target_decel = doc.value("target_decel", stage.target_decel);
  stage.jerk = doc.value("jerk", stage.jerk);
  stage.application_delay = doc.value("application_delay", stage.application_delay);
}

void apply_sensor(const json & doc, perception::SensorSpec & spec, const std::string & where)
{
  check_keys(doc, {"full_angle", "range", "mount_offset", "detection_rule", "latency"}, where);
  spec.full_angle = doc.value("full_angle", spec.full_angle);
  spec.range = doc.value("range", spec.range);
  spec.mount_offset = doc.value("mount_offset", spec.mount_offset);
  spec.latency = doc.value("latency", spec.latency);
  if (doc.contains("detection_rule")) {
    const auto rule = perception::parse_detection_rule(doc.at("detection_rule").get<std::string>());
    if (!rule) {
      throw ConfigError("manifest: unknown detection rule in " + where);
    }
    spec.detection_rule = *rule;
  }
}

scenarios::VariationGrid parse_grid(const json & doc, const std::string & where)
{
  check_keys(doc, {"ego_kph", "opp_kph", "fractions"}, where);
  scenarios::VariationGrid grid;
  grid.ego_speeds = doc.at("ego_kph").get<std::vector<double>>();
  grid.opp_speeds = doc.at("opp_kph").get<std::vector<double>>();
  grid.impact_fractions = doc.at("fractions").get<std::vector<double>>();
  if (grid.size() == 0) {
    throw ConfigError("manifest: empty variation grid in " + where);
  }
  return grid;
}

perception::SensorKind require_sensor(const std::string & text)
{
  const auto kind = perception::parse_sensor_kind(text);
  if (!kind || *kind == perception::SensorKind::V2X) {
    throw ConfigError("unknown onboard sensor set '" + text + "' (min, mid, prem)");
  }
  return *kind;
}

engine::System require_system(const std::string & text)
{
  const auto system = engine::parse_system(text);
  if (!system) {
    throw ConfigError("unknown system '" + text + "' (aeb, two-stage)");
  }
  return *system;
}

std::vector<scenarios::Scenario> load_scenarios(
  const std::optional<std::string> & file, const std::optional<std::vector<int>> & ids)
{
  std::vector<scenarios::Scenario> all;
  if (file) {
    std::istringstream in(read_file(*file));
    all = scenarios::read_catalogue(in);
  } else {
    all = scenarios::catalogue();
  }
  if (!ids) {
    return all;
  }
  if (ids->empty()) {
    throw ConfigError("empty scenario selection");
  }
  std::vector<scenarios::Scenario> out;
  for (const int id : *ids) {
    const auto it = std::find_if(all.begin(), all.end(), [id](const auto & s) { return s.id == id; });
    if (it == all.end()) {
      throw ConfigError("unknown scenario id " + std::to_string(id));
    }
    if (std::none_of(out.begin(), out.end(), [id](const auto & s) { return s.id == id; })) {
      out.push_back(*it);
    }
  }
  return out;
}

std::optional<std::vector<int>> parse_scenario_flags(const std::vector<std::string> & raw)
{
  std::vector<int> ids;
  for (const auto & item : raw) {
    std::istringstream ss(item);
    for (std::string tok; std::getline(ss, tok, ',');) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      if (tok.empty()) {
        continue;
      }
      try {
        std::size_t used = 0;
        ids.push_back(std::stoi(tok, &used));
        if (used != tok.size()) {
          throw std::invalid_argument(tok);
        }
      } catch (const std::exception &) {
        throw ConfigError("invalid scenario id '" + tok + "'");
      }
    }
  }
  return ids;
}

severity::ModelSet load_models(const std::optional<std::string> & file)
{
  severity::ModelSet models;
  if (file) {
    for (auto & m : severity::models_from_json(read_file(*file))) {
      models.set(std::move(m));
    }
  }
  return models;
}

std::string out_dir_from(const std::string & flag)
{
  if (const char * env = std::getenv("AVERTSIM_OUT"); env && *env) {
    return env;
  }
  return flag;
}

bool record_matches(const severity::CrashRecord & r, const severity::Target target)
{
  using severity::Target;
  using severity::Zone;
  switch (target) {
    case Target::OpponentBike:
      return r.opponent_type == OpponentType::Bike;
    case Target::OpponentCarZoneB:
      return r.opponent_type == OpponentType::Car && r.zone == Zone::B;
    case Target::OpponentCarZoneAC:
      return r.opponent_type == OpponentType::Car && (r.zone == Zone::A || r.zone == Zone::C);
    case Target::EgoFrontVsCar:
      return r.opponent_type == OpponentType::Car;
  }
  return false;
}

std::vector<severity::CrashRecord> synthesize(
  const severity::SeverityModel & truth, const std::size_t n, const std::uint64_t seed)
{
  using severity::Target;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> velocity(5.0, 100.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<severity::CrashRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    severity::CrashRecord r;
    r.impact_velocity = velocity(rng);
    r.severe = unit(rng) < severity::severity_probability(truth, r.impact_velocity);
    switch (truth.target) {
      case Target::OpponentBike:
        r.opponent_type = OpponentType::Bike;
        break;
      case Target::OpponentCarZoneB:
      case Target::EgoFrontVsCar:
        r.zone = severity::Zone::B;
        break;
      case Target::OpponentCarZoneAC:
        r.zone = i % 2 == 0 ? severity::Zone::A : severity::Zone::C;
        break;
    }
    out.push_back(r);
  }
  return out;
}

struct SelectionFlags
{
  std::vector<std::string> systems;
  std::vector<std::string> sensors;
  std::vector<double> ttcs;

  bool any() const { return !systems.empty() || !sensors.empty() || !ttcs.empty(); }
};

std::vector<SystemSelection> selections_from_flags(const SelectionFlags & flags)
{
  std::vector<engine::System> systems;
  for (const auto & s : flags.systems) {
    systems.push_back(require_system(s));
  }
  if (systems.empty()) {
    systems = {engine::System::AebOnly, engine::System::TwoStage};
  }
  std::vector<perception::SensorKind> sensors;
  for (const auto & s : flags.sensors) {
    sensors.push_back(require_sensor(s));
  }
  if (sensors.empty()) {
    sensors = {
      perception::SensorKind::Minimal, perception::SensorKind::Medium,
      perception::SensorKind::Premium};
  }
  std::vector<double> ttcs = flags.ttcs;
  for (const double t : ttcs) {
    if (!(t > 0.0)) {
      throw ConfigError("TTC threshold must be positive");
    }
  }
  if (ttcs.empty()) {
    ttcs = {2.0, 1.5, 1.25};
  }
  std::vector<SystemSelection> out;
  for (const auto system : systems) {
    if (system == engine::System::AebOnly) {
      for (const auto s : sensors) {
        out.push_back({system, s, 0.0});
      }
      continue;
    }
    for (const double t : ttcs) {
      for (const auto s : sensors) {
        out.push_back({system, s, t});
      }
    }
  }
  return out;
}

int cmd_run(RunManifest manifest, const std::optional<std::string> & trace_case, std::ostream & out)
{
  const auto configs = build_configs(manifest);
  const auto scenario_list = load_scenarios(manifest.scenario_file, manifest.scenario_ids);
  const auto models = load_models(manifest.models_file);
  const auto cases =
    experiment::enumerate_cases(scenario_list, manifest.car_grid, manifest.bike_grid);

  const auto started = std::chrono::steady_clock::now();
  const auto results = experiment::run_batch(cases, configs, models, manifest.workers);
  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const auto global = report::aggregate(results, report::GroupBy::Global);
  const auto per_scenario = report::aggregate(results, report::GroupBy::PerScenario);

  const fs::path dir = manifest.out_dir;
  std::ostringstream buf;
  report::write_case_results(buf, results);
  write_file(dir / "case_results.csv", buf.str());
  buf.str("");
  report::write_kpi_global(buf, global);
  write_file(dir / "kpi_global.csv", buf.str());
  buf.str("");
  report::write_kpi_per_scenario(buf, per_scenario);
  write_file(dir / "kpi_per_scenario.csv", buf.str());

  out << fmt::format(
    "{} cases x {} configs = {} runs in {:.1f} s\n", cases.size(), configs.size(), results.size(),
    seconds);
  out << report::format_table(global);
  out << "wrote " << (dir / "kpi_global.csv").string() << ", "
      << (dir / "kpi_per_scenario.csv").string() << ", " << (dir / "case_results.csv").string()
      << "\n";

  if (trace_case) {
    const auto parsed = experiment::parse_case_id(*trace_case);
    if (!parsed) {
      throw ConfigError("invalid case id '" + *trace_case + "' (expected <scenario>-<variation>)");
    }
    const auto it = std::find_if(cases.begin(), cases.end(), [&](const auto & c) {
      return c.scenario.id == parsed->first && c.variation_index == parsed->second;
    });
    if (it == cases.end()) {
      throw ConfigError("case " + *trace_case + " is not part of this run");
    }
    const auto layout = scenarios::build_layout(it->scenario, it->variation);
    for (auto cfg : configs) {
      cfg.record_snapshots = true;
      const auto trace = engine::run(layout, cfg);
      std::ostringstream tb;
      engine::write_trace_csv(tb, trace);
      std::string name = cfg.label();
      std::replace(name.begin(), name.end(), ' ', '_');
      const fs::path path = dir / fmt::format("trace_{}_{}.csv", it->id(), name);
      write_file(path, tb.str());
      out << fmt::format(
        "trace {} [{}]: {} ({}), wrote {}\n", it->id(), cfg.label(),
        trace.outcome.occurred ? fmt::format("crash at {:.2f} kph", trace.outcome.impact_velocity)
                               : std::string("avoided"),
        engine::to_string(trace.termination), path.string());
    }
  }
  return kExitOk;
}

}  // namespace

std::vector<SystemSelection> default_selections()
{
  return selections_from_flags({});
}

std::vector<engine::RunConfig> build_configs(const RunManifest & manifest)
{
  if (manifest.systems.empty()) {
    throw ConfigError("at least one system configuration is required");
  }
  std::vector<engine::RunConfig> out;
  for (const auto & sel : manifest.systems) {
    engine::RunConfig cfg = engine::RunConfig::make(sel.system, sel.sensors);
    cfg.slot = manifest.slot;
    cfg.partial = manifest.partial;
    if (sel.system == engine::System::TwoStage) {
      cfg.partial.ttc_threshold = sel.ttc_threshold;
    }
    cfg.aeb = manifest.aeb;
    cfg.v2x = manifest.v2x;
    switch (sel.sensors) {
      case perception::SensorKind::Minimal:
        cfg.onboard = manifest.minimal;
        break;
      case perception::SensorKind::Medium:
        cfg.onboard = manifest.medium;
        break;
      case perception::SensorKind::Premium:
        cfg.onboard = manifest.premium;
        break;
      case perception::SensorKind::V2X:
        throw ConfigError("V2X is not an onboard sensor set");
    }
    try {
      cfg.validate();
    } catch (const std::invalid_argument & e) {
      throw ConfigError(e.what());
    }
    out.push_back(cfg);
  }
  return out;
}

RunManifest manifest_from_json(const std::string & text)
{
  RunManifest m;
  try {
    const auto doc = json::parse(text);
    check_keys(
      doc,
      {"scenarios", "scenario_file", "systems", "stages", "sensors", "slot", "models", "out",
       "workers", "seed", "car_grid", "bike_grid"},
      "manifest");
    if (doc.contains("scenarios")) {
      const auto & s = doc.at("scenarios");
      if (s.is_string()) {
        if (s.get<std::string>() != "all") {
          throw ConfigError("manifest: scenarios must be \"all\" or a list of ids");
        }
      } else {
        m.scenario_ids = s.get<std::vector<int>>();
      }
    }
    if (doc.contains("scenario_file")) {
      m.scenario_file = doc.at("scenario_file").get<std::string>();
    }
    if (doc.contains("systems")) {
      m.systems.clear();
      for (const auto & item : doc.at("systems")) {
        check_keys(item, {"system", "sensors", "ttc"}, "systems");
        SystemSelection sel;
        sel.system = require_system(item.at("system").get<std::string>());
        sel.sensors = require_sensor(item.at("sensors").get<std::string>());
        sel.ttc_threshold = item.value("ttc", sel.system == engine::System::AebOnly ? 0.0 : 2.0);
        m.systems.push_back(sel);
      }
    }
    if (doc.contains("stages")) {
      const auto & st = doc.at("stages");
      check_keys(st, {"partial", "aeb"}, "stages");
      if (st.contains("partial")) apply_stage(st.at("partial"), m.partial, "stages.partial");
      if (st.contains("aeb")) apply_stage(st.at("aeb"), m.aeb, "stages.aeb");
    }
    if (doc.contains("sensors")) {
      const auto & se = doc.at("sensors");
      check_keys(se, {"v2x", "min", "mid", "prem"}, "sensors");
      if (se.contains("v2x")) apply_sensor(se.at("v2x"), m.v2x, "sensors.v2x");
      if (se.contains("min")) apply_sensor(se.at("min"), m.minimal, "sensors.min");
      if (se.contains("mid")) apply_sensor(se.at("mid"), m.medium, "sensors.mid");
      if (se.contains("prem")) apply_sensor(se.at("prem"), m.premium, "sensors.prem");
    }
    m.slot = doc.value("slot", m.slot);
    if (doc.contains("models")) m.models_file = doc.at("models").get<std::string>();
    m.out_dir = doc.value("out", m.out_dir);
    m.workers = doc.value("workers", m.workers);
    m.seed = doc.value("seed", m.seed);
    if (doc.contains("car_grid")) m.car_grid = parse_grid(doc.at("car_grid"), "car_grid");
    if (doc.contains("bike_grid")) m.bike_grid = parse_grid(doc.at("bike_grid"), "bike_grid");
  } catch (const json::exception & e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  return m;
}

int run_cli(const int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"avertsim: V2X-enhanced two-stage braking in obstructed crossings"};
  app.require_subcommand(1);

  std::vector<std::string> scenario_flags;
  SelectionFlags selection;
  std::string models_file;
  std::string out_dir = "avertsim_out";
  unsigned workers = 1;
  std::uint64_t seed = 1;
  std::string config_file;
  std::string trace_case;
  std::string scenario_file;

  const auto add_selection = [&](CLI::App * sub) {
    sub->add_option("--scenario", scenario_flags, "Scenario ids (repeat or comma separate)");
    sub->add_option("--system", selection.systems, "Braking system: aeb, two-stage");
    sub->add_option("--ttc", selection.ttcs, "Partial brake TTC threshold(s) in s: 1.25, 1.5, 2.0");
    sub->add_option("--sensors", selection.sensors, "Onboard sensor set(s): min, mid, prem");
    sub->add_option("--models", models_file, "Severity model file (JSON)");
    sub->add_option("--out", out_dir, "Output directory (AVERTSIM_OUT overrides)");
    sub->add_option("--scenario-file", scenario_file, "Scenario catalogue CSV replacing the built-in one");
  };

  auto * run = app.add_subcommand("run", "Simulate scenario variations and write KPI tables");
  add_selection(run);
  run->add_option("--config", config_file, "Run manifest (JSON)");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Random seed (synthetic data only)");
  run->add_option("--trace", trace_case, "Also export the time series of CASE_ID (<scenario>-<variation>)");

  auto * trace = app.add_subcommand("trace", "Export the time series of one case");
  add_selection(trace);
  trace->add_option("--trace", trace_case, "Case id <scenario>-<variation>")->required();

  std::string data_file;
  std::string target_name = "opponent_bike";
  std::string model_out;
  std::size_t synthetic = 0;
  std::string write_data;
  auto * fit = app.add_subcommand("fit", "Fit a logistic severity model by maximum likelihood");
  fit->add_option("data", data_file, "Crash record CSV (impact_velocity_kph,severe,zone,opponent_type)");
  fit->add_option("--target", target_name, "opponent_bike, opponent_car_zone_b, opponent_car_zone_ac, ego_front_vs_car");
  fit->add_option("--output", model_out, "Model file to write (default <out>/model_<target>.json)");
  fit->add_option("--out", out_dir, "Output directory (AVERTSIM_OUT overrides)");
  fit->add_option("--synthetic", synthetic, "Draw N records from the target's default model instead of reading data");
  fit->add_option("--seed", seed, "Seed for --synthetic");
  fit->add_option("--write-data", write_data, "Also write the records used for the fit");

  std::string export_file;
  auto * cat = app.add_subcommand("catalogue", "List the scenario catalogue");
  cat->add_option("--scenario", scenario_flags, "Only these scenario ids");
  cat->add_option("--export", export_file, "Write the catalogue CSV to this file");
  cat->add_option("--scenario-file", scenario_file, "Read the catalogue from this CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto scenario_ids = run->parsed() || trace->parsed() || cat->parsed()
                                ? (scenario_flags.empty() && !app.get_subcommands().front()->count("--scenario")
                                     ? std::nullopt
                                     : parse_scenario_flags(scenario_flags))
                                : std::nullopt;

    if (cat->parsed()) {
      const auto list = load_scenarios(
        scenario_file.empty() ? std::nullopt : std::optional(scenario_file), scenario_ids);
      for (const auto & s : list) {
        out << fmt::format(
          "{:>2}  {:<17} {:<15} d_ego={:<6g} d_opp={:<6g} opponent={}\n", s.id,
          scenarios::to_string(s.use_case), scenarios::to_string(s.obstruction), s.d_ego, s.d_opp,
          to_string(s.opponent_type));
      }
      if (!export_file.empty()) {
        std::ostringstream buf;
        scenarios::write_catalogue(buf, list);
        write_file(export_file, buf.str());
      }
      return kExitOk;
    }

    if (fit->parsed()) {
      const auto target = severity::parse_target(target_name);
      if (!target) {
        throw ConfigError("unknown severity target '" + target_name + "'");
      }
      std::vector<severity::CrashRecord> records;
      if (synthetic > 0) {
        records = synthesize(severity::default_model(*target), synthetic, seed);
      } else {
        if (data_file.empty()) {
          throw ConfigError("fit needs a data file or --synthetic N");
        }
        std::istringstream in(read_file(data_file));
        for (const auto & r : severity::read_crash_records(in)) {
          if (record_matches(r, *target)) {
            records.push_back(r);
          }
        }
      }
      if (!write_data.empty()) {
        std::ostringstream buf;
        severity::write_crash_records(buf, records);
        write_file(write_data, buf.str());
      }
      const auto model = severity::fit_mle(records, *target);
      const fs::path path = model_out.empty()
                              ? fs::path(out_dir_from(out_dir)) /
                                  fmt::format("model_{}.json", severity::to_string(*target))
                              : fs::path(model_out);
      write_file(path, severity::model_to_json(model));
      const auto band = severity::severity_band(model, 50.0);
      out << fmt::format(
        "target {}: a = {:.6f} 1/kph, b = {:.6f}, n = {}, f(50 kph) = {:.4f}, sigma(50 kph) = "
        "{:.4f}\nwrote {}\n",
        severity::to_string(*target), model.slope_a, model.intercept_b, model.n, band.probability,
        band.std_dev, path.string());
      return kExitOk;
    }

    RunManifest manifest;
    if (!config_file.empty()) {
      manifest = manifest_from_json(read_file(config_file));
    }
    if (scenario_ids) manifest.scenario_ids = scenario_ids;
    if (!scenario_file.empty()) manifest.scenario_file = scenario_file;
    if (selection.any()) manifest.systems = selections_from_flags(selection);
    if (!models_file.empty()) manifest.models_file = models_file;
    if (run->count("--out") || trace->count("--out")) manifest.out_dir = out_dir;
    manifest.out_dir = out_dir_from(manifest.out_dir);
    if (run->count("--workers")) manifest.workers = workers;
    if (run->count("--seed")) manifest.seed = seed;

    if (run->parsed()) {
      return cmd_run(manifest, trace_case.empty() ? std::nullopt : std::optional(trace_case), out);
    }

    // trace: only the requested case, every selected config.
    const auto parsed = experiment::parse_case_id(trace_case);
    if (!parsed) {
      throw ConfigError("invalid case id '" + trace_case + "' (expected <scenario>-<variation>)");
    }
    manifest.scenario_ids = std::vector<int>{parsed->first};
    if (!selection.any()) {
      manifest.systems = {{engine::System::AebOnly, perception::SensorKind::Medium, 0.0},
                          {engine::System::TwoStage, perception::SensorKind::Medium, 2.0}};
    }
    const auto configs = build_configs(manifest);
    const auto list = load_scenarios(manifest.scenario_file, manifest.scenario_ids);
    const auto cases = experiment::enumerate_cases(list, manifest.car_grid, manifest.bike_grid);
    if (parsed->second >= cases.size()) {
      throw ConfigError("variation index out of range for case '" + trace_case + "'");
    }
    const auto & c = cases[parsed->second];
    const auto layout = scenarios::build_layout(c.scenario, c.variation);
    for (auto cfg : configs) {
      cfg.record_snapshots = true;
      const auto tr = engine::run(layout, cfg);
      std::ostringstream buf;
      engine::write_trace_csv(buf, tr);
      std::string name = cfg.label();
      std::replace(name.begin(), name.end(), ' ', '_');
      const fs::path path = fs::path(manifest.out_dir) / fmt::format("trace_{}_{}.csv", c.id(), name);
      write_file(path, buf.str());
      out << fmt::format(
        "{} [{}] ego {:g} kph, opp {:g} kph, fraction {:g}: {} ({}), wrote {}\n", c.id(),
        cfg.label(), c.variation.ego_speed, c.variation.opp_speed,
        c.variation.unbraked_impact_fraction,
        tr.outcome.occurred ? fmt::format("crash at {:.2f} kph", tr.outcome.impact_velocity)
                            : std::string("avoided"),
        engine::to_string(tr.termination), path.string());
    }
    return kExitOk;
  } catch (const ConfigError & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const severity::SeparationError & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const severity::InsufficientData & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const scenarios::InfeasibleVariation & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception & e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace avertsim::cli
