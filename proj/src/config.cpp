#include "ringbot/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ringbot/errors.hpp"

namespace ringbot::config {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string field_name(const Entry& e) { return e.section.empty() ? e.key : e.section + "." + e.key; }

double to_double(const Entry& e, std::string_view token) {
  const std::string t = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw ParseError(e.line, field_name(e), fmt::format("'{}' is not a finite number", t));
  return v;
}

double as_double(const Entry& e) { return to_double(e, e.value); }

std::optional<double> as_optional_double(const Entry& e) {
  if (e.value == "none") return std::nullopt;
  return as_double(e);
}

long as_integer(const Entry& e) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (e.value.empty() || ec != std::errc() || ptr != e.value.data() + e.value.size())
    throw ParseError(e.line, field_name(e), fmt::format("'{}' is not an integer", e.value));
  return v;
}

bool as_bool(const Entry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ParseError(e.line, field_name(e), fmt::format("'{}' is not a boolean", e.value));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> as_double_list(const Entry& e) {
  std::vector<double> out;
  for (const auto& tok : split_list(e.value)) out.push_back(to_double(e, tok));
  if (out.empty()) throw ParseError(e.line, field_name(e), "expected a comma-separated list of numbers");
  return out;
}

controller::ScheduledCommand as_script_entry(const Entry& e) {
  std::istringstream in(e.value);
  std::string time_tok, verb, arg;
  in >> time_tok >> verb;
  if (time_tok.empty() || verb.empty())
    throw ParseError(e.line, field_name(e), "expected '<t_s> <command> [arg]'");
  controller::ScheduledCommand sc;
  sc.time = to_double(e, time_tok);
  const bool has_arg = static_cast<bool>(in >> arg);
  std::string extra;
  if (in >> extra) throw ParseError(e.line, field_name(e), "too many arguments");
  if (verb == "reshape" || verb == "inflate") {
    if (!has_arg) throw ParseError(e.line, field_name(e), fmt::format("'{}' needs an argument", verb));
    const double v = to_double(e, arg);
    if (verb == "reshape")
      sc.command = controller::Reshape{v};
    else
      sc.command = controller::InflateTo{v};
  } else if (verb == "deflate" || verb == "stop") {
    if (has_arg) throw ParseError(e.line, field_name(e), fmt::format("'{}' takes no argument", verb));
    if (verb == "deflate")
      sc.command = controller::Deflate{};
    else
      sc.command = controller::Stop{};
  } else {
    throw ParseError(e.line, field_name(e), fmt::format("unknown command '{}'", verb));
  }
  return sc;
}

using Setter = std::function<void(const Entry&)>;

void bind_inflatable(std::map<std::string, Setter>& keys, std::optional<pneumatics::InflatableSpec>& slot) {
  keys["deflated_volume_m3"] = [&](const Entry& e) { slot->deflated_volume = as_double(e); };
  keys["reference_volume_m3"] = [&](const Entry& e) { slot->reference_volume = as_double(e); };
  keys["reference_pressure_pa"] = [&](const Entry& e) { slot->reference_pressure = as_double(e); };
  keys["max_volume_m3"] = [&](const Entry& e) { slot->max_volume = as_double(e); };
  keys["burst_pressure_pa"] = [&](const Entry& e) { slot->burst_pressure = as_optional_double(e); };
  keys["wall_thickness_m"] = [&](const Entry& e) { slot->wall_thickness = as_double(e); };
}

void bind_regulator(std::map<std::string, Setter>& keys, pneumatics::RegulatorModel& reg) {
  keys["time_constant_s"] = [&](const Entry& e) { reg.time_constant = as_double(e); };
  keys["max_rate_pa_s"] = [&](const Entry& e) { reg.max_rate = as_double(e); };
  keys["sensor_noise_sd_pa"] = [&](const Entry& e) { reg.sensor_noise_sd = as_double(e); };
}

}  // namespace

std::vector<Entry> parse_entries(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ParseError(line_no, line, "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      out.push_back({section, "", "", line_no});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, line, "expected 'key = value'");
    Entry e{section, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)),
            line_no};
    if (e.key.empty()) throw ParseError(line_no, section, "empty key");
    out.push_back(std::move(e));
  }
  return out;
}

const char* to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::Stiffness: return "stiffness";
    case ScenarioId::Geometry: return "geometry";
    case ScenarioId::Burst: return "burst";
    case ScenarioId::Contact: return "contact";
    case ScenarioId::Bleed: return "bleed";
    case ScenarioId::FullDevice: return "full_device";
  }
  return "?";
}

std::optional<ScenarioId> scenario_from_string(const std::string& s) {
  for (auto id : {ScenarioId::Stiffness, ScenarioId::Geometry, ScenarioId::Burst, ScenarioId::Contact,
                  ScenarioId::Bleed, ScenarioId::FullDevice})
    if (s == to_string(id)) return id;
  if (s == "full-device") return ScenarioId::FullDevice;
  return std::nullopt;
}

contact::ContactModel ScenarioConfig::contact_model() const {
  contact::ContactModel m;
  m.atmospheric_pressure = contact.atmospheric_pressure;
  m.spread_area = contact.spread_area;
  if (contact.mode == "ring") {
    double ring_area = 0.0;
    if (contact.ring_area) {
      ring_area = *contact.ring_area;
    } else {
      const double d = contact.separation.value_or(2.0 * arm.arc_radius);
      ring_area = geometry::enclosed_area({arm, d});
    }
    m.mode = contact::RingDefined{ring_area, contact.footprint_area.value_or(0.0), contact.blend};
  } else {
    m.mode = contact::PlateDefined{contact.plate_area};
  }
  return m;
}

hemostasis::BleedScenario ScenarioConfig::bleed_scenario() const {
  hemostasis::BleedScenario scn;
  scn.open_threshold = bleed.open_threshold;
  scn.coupling = bleed.coupling.value_or(
      hemostasis::calibrate_coupling(bleed.open_threshold, bleed.threshold_with_device, bleed.calibration_applied));
  return scn;
}

ScenarioConfig default_config(ScenarioId id) {
  ScenarioConfig cfg;
  cfg.scenario = id;
  cfg.ring = pneumatics::ring_spec();
  cfg.balloon = pneumatics::balloon_spec();
  return cfg;
}

ScenarioConfig parse_config(const std::string& text, std::optional<ScenarioId> scenario) {
  const auto entries = parse_entries(text);

  ScenarioConfig cfg;
  std::vector<std::string> violations;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  bool scenario_set = false;
  bool script_replaced = false;

  std::map<std::string, std::map<std::string, Setter>> table;

  auto& top = table[""];
  top["scenario"] = [&](const Entry& e) {
    auto id = scenario_from_string(e.value);
    if (!id) throw ParseError(e.line, field_name(e), fmt::format("unknown scenario '{}'", e.value));
    cfg.scenario = *id;
    scenario_set = true;
  };
  top["seed"] = [&](const Entry& e) {
    const long v = as_integer(e);
    if (v < 0) throw ParseError(e.line, field_name(e), "seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(v);
  };
  top["output_dir"] = [&](const Entry& e) { cfg.output_dir = e.value; };
  top["plot"] = [&](const Entry& e) { cfg.plot = as_bool(e); };

  auto& arm = table["arm"];
  arm["name"] = [&](const Entry& e) { cfg.arm.name = e.value; };
  arm["radius_m"] = [&](const Entry& e) { cfg.arm.arc_radius = as_double(e); };
  arm["arc_angle_rad"] = [&](const Entry& e) { cfg.arm.arc_angle = as_double(e); };
  arm["thickness_m"] = [&](const Entry& e) { cfg.arm.thickness = as_double(e); };
  arm["web_thickness_m"] = [&](const Entry& e) { cfg.arm.web_thickness = as_double(e); };
  arm["bending_stiffness_nm2"] = [&](const Entry& e) { cfg.arm.bending_stiffness = as_double(e); };
  arm["max_stress_ref_pa"] = [&](const Entry& e) { cfg.arm.max_stress_ref = as_double(e); };

  bind_inflatable(table["inflatable.ring"], cfg.ring);
  bind_inflatable(table["inflatable.balloon"], cfg.balloon);
  bind_regulator(table["regulator.balloon"], cfg.controller.balloon_regulator);
  bind_regulator(table["regulator.ring"], cfg.controller.ring_regulator);

  auto& ctl = table["controller"];
  ctl["torque_pressure_limit_pa"] = [&](const Entry& e) { cfg.controller.torque_pressure_limit = as_double(e); };
  ctl["holding_tolerance_pa"] = [&](const Entry& e) { cfg.controller.holding_tolerance = as_double(e); };
  ctl["setpoint_margin_pa"] = [&](const Entry& e) { cfg.controller.setpoint_margin = as_optional_double(e); };
  ctl["ring_setpoint_pa"] = [&](const Entry& e) { cfg.controller.ring_setpoint = as_double(e); };
  ctl["screw_lead_m"] = [&](const Entry& e) { cfg.controller.screw_lead = as_double(e); };
  ctl["screw_speed_rev_s"] = [&](const Entry& e) { cfg.controller.screw_speed = as_double(e); };
  ctl["separation_margin_fraction"] = [&](const Entry& e) {
    cfg.controller.separation_margin_fraction = as_double(e);
  };

  auto& stiff = table["stiffness"];
  stiff["radius_m"] = [&](const Entry& e) { cfg.stiffness.radius = as_double(e); };
  stiff["loads_n"] = [&](const Entry& e) { cfg.stiffness.loads = as_double_list(e); };
  stiff["noise_fraction"] = [&](const Entry& e) { cfg.stiffness.noise_fraction = as_double(e); };
  stiff["trials"] = [&](const Entry& e) { cfg.stiffness.trials = static_cast<int>(as_integer(e)); };
  stiff["exact_tolerance"] = [&](const Entry& e) { cfg.stiffness.exact_tolerance = as_double(e); };
  stiff["noisy_tolerance"] = [&](const Entry& e) { cfg.stiffness.noisy_tolerance = as_double(e); };
  stiff["designs"] = [&](const Entry& e) {
    std::vector<StiffnessDesign> designs;
    for (const auto& name : split_list(e.value)) {
      auto it = std::find_if(cfg.stiffness.designs.begin(), cfg.stiffness.designs.end(),
                             [&](const StiffnessDesign& d) { return d.name == name; });
      designs.push_back(it != cfg.stiffness.designs.end() ? *it : StiffnessDesign{name, 0.0});
    }
    cfg.stiffness.designs = std::move(designs);
  };

  auto& geo = table["geometry"];
  geo["sweep_points"] = [&](const Entry& e) { cfg.geometry.sweep_points = static_cast<int>(as_integer(e)); };
  geo["points_per_arc"] = [&](const Entry& e) { cfg.geometry.points_per_arc = static_cast<int>(as_integer(e)); };

  auto& burst = table["burst"];
  burst["ramp_rate_pa_s"] = [&](const Entry& e) { cfg.burst.ramp_rate = as_double(e); };
  burst["dt_s"] = [&](const Entry& e) { cfg.burst.dt = as_double(e); };
  burst["controller_dt_s"] = [&](const Entry& e) { cfg.burst.controller_dt = as_double(e); };

  auto& con = table["contact"];
  con["mode"] = [&](const Entry& e) {
    if (e.value != "plate" && e.value != "ring")
      throw ParseError(e.line, field_name(e), fmt::format("mode must be 'plate' or 'ring', got '{}'", e.value));
    cfg.contact.mode = e.value;
  };
  con["plate_area_m2"] = [&](const Entry& e) { cfg.contact.plate_area = as_double(e); };
  con["ring_area_m2"] = [&](const Entry& e) { cfg.contact.ring_area = as_optional_double(e); };
  con["separation_m"] = [&](const Entry& e) { cfg.contact.separation = as_optional_double(e); };
  con["footprint_area_m2"] = [&](const Entry& e) { cfg.contact.footprint_area = as_optional_double(e); };
  con["blend"] = [&](const Entry& e) { cfg.contact.blend = as_double(e); };
  con["spread_area_m2"] = [&](const Entry& e) { cfg.contact.spread_area = as_optional_double(e); };
  con["atmospheric_pressure_pa"] = [&](const Entry& e) { cfg.contact.atmospheric_pressure = as_double(e); };
  con["p_min_pa"] = [&](const Entry& e) { cfg.contact.p_min = as_double(e); };
  con["p_max_pa"] = [&](const Entry& e) { cfg.contact.p_max = as_double(e); };
  con["p_step_pa"] = [&](const Entry& e) { cfg.contact.p_step = as_double(e); };

  auto& bl = table["bleed"];
  bl["open_threshold_pa"] = [&](const Entry& e) { cfg.bleed.open_threshold = as_double(e); };
  bl["threshold_with_device_pa"] = [&](const Entry& e) { cfg.bleed.threshold_with_device = as_double(e); };
  bl["calibration_applied_pa"] = [&](const Entry& e) { cfg.bleed.calibration_applied = as_double(e); };
  bl["coupling"] = [&](const Entry& e) { cfg.bleed.coupling = as_optional_double(e); };
  bl["applied_pressure_pa"] = [&](const Entry& e) { cfg.bleed.applied_pressure = as_double(e); };
  bl["pump_min_pa"] = [&](const Entry& e) { cfg.bleed.pump_min = as_double(e); };
  bl["pump_max_pa"] = [&](const Entry& e) { cfg.bleed.pump_max = as_double(e); };
  bl["pump_step_pa"] = [&](const Entry& e) { cfg.bleed.pump_step = as_double(e); };

  auto& dev = table["device"];
  dev["initial_separation_m"] = [&](const Entry& e) { cfg.device.initial_separation = as_optional_double(e); };
  dev["dt_s"] = [&](const Entry& e) { cfg.device.dt = as_double(e); };
  dev["duration_s"] = [&](const Entry& e) { cfg.device.duration = as_double(e); };
  dev["pump_pressure_pa"] = [&](const Entry& e) { cfg.device.pump_pressure = as_double(e); };

  auto& script = table["script"];
  script["at"] = [&](const Entry& e) {
    if (!script_replaced) {
      cfg.device.script.clear();
      script_replaced = true;
    }
    cfg.device.script.push_back(as_script_entry(e));
  };

  auto& ex = table["expect"];
  ex["ring_burst_pa"] = [&](const Entry& e) { cfg.expect.ring_burst = as_optional_double(e); };
  ex["balloon_burst_pa"] = [&](const Entry& e) { cfg.expect.balloon_burst = as_optional_double(e); };
  ex["bleed_flip_pa"] = [&](const Entry& e) { cfg.expect.bleed_flip = as_optional_double(e); };
  ex["bleed_flip_no_device_pa"] = [&](const Entry& e) { cfg.expect.bleed_flip_no_device = as_optional_double(e); };
  ex["final_phase"] = [&](const Entry& e) {
    if (e.value == "none")
      cfg.expect.final_phase.reset();
    else
      cfg.expect.final_phase = e.value;
  };

  for (const auto& e : entries) {
    const bool design_section = e.section.rfind("stiffness.", 0) == 0;
    if (e.key.empty()) {
      if (!seen_sections.insert(e.section).second)
        violations.push_back(fmt::format("line {}: duplicate section [{}]", e.line, e.section));
      if (e.section == "inflatable.ring" && !cfg.ring) cfg.ring = pneumatics::ring_spec();
      if (e.section == "inflatable.balloon" && !cfg.balloon) cfg.balloon = pneumatics::balloon_spec();
      if (!design_section && !table.contains(e.section))
        violations.push_back(fmt::format("line {}: unknown section [{}]", e.line, e.section));
      continue;
    }
    if (!(e.section == "script" && e.key == "at") && !seen_keys.insert(field_name(e)).second) {
      violations.push_back(fmt::format("line {}: duplicate key '{}'", e.line, field_name(e)));
      continue;
    }
    if (design_section) {
      const std::string name = e.section.substr(std::string("stiffness.").size());
      if (e.key != "bending_stiffness_nm2") {
        violations.push_back(fmt::format("line {}: unknown key '{}'", e.line, field_name(e)));
        continue;
      }
      const double ei = as_double(e);
      auto it = std::find_if(cfg.stiffness.designs.begin(), cfg.stiffness.designs.end(),
                             [&](const StiffnessDesign& d) { return d.name == name; });
      if (it != cfg.stiffness.designs.end())
        it->bending_stiffness = ei;
      else
        cfg.stiffness.designs.push_back({name, ei});
      continue;
    }
    auto sec = table.find(e.section);
    if (sec == table.end()) continue;  // reported with the section header
    auto key = sec->second.find(e.key);
    if (key == sec->second.end()) {
      violations.push_back(fmt::format("line {}: unknown key '{}'", e.line, field_name(e)));
      continue;
    }
    key->second(e);
  }

  if (scenario) {
    if (scenario_set && cfg.scenario != *scenario)
      violations.push_back(fmt::format("config scenario '{}' does not match requested '{}'", to_string(cfg.scenario),
                                       to_string(*scenario)));
    cfg.scenario = *scenario;
  } else if (!scenario_set) {
    violations.push_back("missing top-level 'scenario'");
  }

  const bool burst_scenario = cfg.scenario == ScenarioId::Burst;
  if (burst_scenario && !cfg.ring && !cfg.balloon)
    violations.push_back("burst scenario needs an [inflatable.ring] or [inflatable.balloon] section");
  if (!burst_scenario) {
    if (!cfg.ring) cfg.ring = pneumatics::ring_spec();
    if (!cfg.balloon) cfg.balloon = pneumatics::balloon_spec();
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, std::optional<ScenarioId> scenario) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), scenario);
}

void validate(const ScenarioConfig& cfg) {
  std::vector<std::string> v;
  auto guard = [&](const std::string& what, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& ex) {
      v.push_back(what + ": " + ex.what());
    }
  };

  guard("arm", [&] { cfg.arm.validate(); });
  if (cfg.ring) guard("inflatable.ring", [&] { cfg.ring->validate(); });
  if (cfg.balloon) guard("inflatable.balloon", [&] { cfg.balloon->validate(); });

  const auto& s = cfg.stiffness;
  if (!(s.radius > 0.0)) v.push_back("stiffness.radius_m must be > 0");
  if (s.loads.empty() || std::any_of(s.loads.begin(), s.loads.end(), [](double p) { return !(p > 0.0); }))
    v.push_back("stiffness.loads_n must be a nonempty list of positive loads");
  if (s.designs.empty()) v.push_back("stiffness.designs must not be empty");
  for (const auto& d : s.designs)
    if (!(d.bending_stiffness > 0.0))
      v.push_back(fmt::format("stiffness design '{}' needs bending_stiffness_nm2 > 0", d.name));
  if (!(s.noise_fraction >= 0.0)) v.push_back("stiffness.noise_fraction must be >= 0");
  if (s.trials < 0) v.push_back("stiffness.trials must be >= 0");

  if (cfg.geometry.sweep_points < 3) v.push_back("geometry.sweep_points must be >= 3");
  if (cfg.geometry.points_per_arc < 64) v.push_back("geometry.points_per_arc must be >= 64");

  if (!(cfg.burst.ramp_rate > 0.0) || !(cfg.burst.dt > 0.0) || !(cfg.burst.controller_dt > 0.0))
    v.push_back("burst ramp rate and time steps must be > 0");
  if (cfg.ring && !cfg.ring->burst_pressure && cfg.scenario == ScenarioId::Burst)
    v.push_back("inflatable.ring has no burst_pressure_pa");
  if (cfg.balloon && !cfg.balloon->burst_pressure && cfg.scenario == ScenarioId::Burst)
    v.push_back("inflatable.balloon has no burst_pressure_pa");

  const auto& c = cfg.contact;
  if (c.mode == "ring" && !c.footprint_area) v.push_back("contact.footprint_area_m2 is required in ring mode");
  if (!(c.p_step > 0.0) || c.p_min < 0.0 || c.p_max < c.p_min)
    v.push_back("contact pressure sweep needs 0 <= p_min <= p_max and p_step > 0");
  if (c.mode == "plate" || c.footprint_area) guard("contact", [&] { cfg.contact_model().validate(); });

  const auto& b = cfg.bleed;
  guard("bleed", [&] { cfg.bleed_scenario().validate(); });
  if (!(b.pump_step > 0.0) || b.pump_min < 0.0 || b.pump_max < b.pump_min)
    v.push_back("bleed pump sweep needs 0 <= pump_min <= pump_max and pump_step > 0");
  if (b.applied_pressure < 0.0) v.push_back("bleed.applied_pressure_pa must be >= 0");

  if (!(cfg.device.dt > 0.0) || !(cfg.device.duration > 0.0)) v.push_back("device dt and duration must be > 0");
  if (!std::is_sorted(cfg.device.script.begin(), cfg.device.script.end(),
                      [](const auto& x, const auto& y) { return x.time < y.time; }))
    v.push_back("script entries must be sorted by time");
  if (cfg.device.initial_separation)
    guard("device.initial_separation_m", [&] { geometry::lateral_offset({cfg.arm, *cfg.device.initial_separation}); });

  auto ctl = cfg.controller;
  if (cfg.balloon) ctl.balloon = *cfg.balloon;
  if (cfg.ring) ctl.ring = *cfg.ring;
  guard("controller", [&] { ctl.validate(); });

  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace ringbot::config
