#include "ringbot/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "ringbot/contact_force.hpp"
#include "ringbot/device_controller.hpp"
#include "ringbot/errors.hpp"
#include "ringbot/geometry.hpp"
#include "ringbot/hemostasis.hpp"
#include "ringbot/plot.hpp"
#include "ringbot/pneumatics.hpp"

namespace ringbot::scenario {

namespace fs = std::filesystem;
using config::ScenarioConfig;
using config::ScenarioId;

namespace {

std::string num(double v) { return fmt::format("{:.10g}", v); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : columns_(header.size()) {
    text_ = join(header);
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> r{cell(cells)...};
    if (r.size() != columns_) throw std::logic_error("csv row width mismatch");
    text_ += join(r);
  }

  const std::string& text() const { return text_; }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }

  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    return line + "\n";
  }

  std::size_t columns_;
  std::string text_;
};

class Writer {
 public:
  Writer(fs::path dir, bool plot, RunReport& report) : dir_(std::move(dir)), plot_(plot), report_(report) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IOError(fmt::format("cannot create output directory '{}': {}", dir_.string(), ec.message()));
  }

  void csv(const std::string& name, const Csv& table) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError(fmt::format("cannot open '{}' for writing", path.string()));
    out << table.text();
    if (!out) throw IOError(fmt::format("failed writing '{}'", path.string()));
    report_.artifacts.push_back(path);
  }

  void svg(const std::string& name, const std::vector<plot::Series>& series, const plot::Axes& axes) {
    if (!plot_) return;
    const fs::path path = dir_ / name;
    plot::emit_plot(series, axes, path);
    report_.artifacts.push_back(path);
  }

 private:
  fs::path dir_;
  bool plot_;
  RunReport& report_;
};

void add_check(RunReport& r, std::string name, double value, double expected, double tolerance) {
  r.checks.push_back({std::move(name), value, expected, tolerance, std::abs(value - expected) <= tolerance});
}

void add_flag(RunReport& r, std::string name, bool ok) {
  r.checks.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok});
}

// ---------------------------------------------------------------------------

RunReport run_stiffness(const ScenarioConfig& cfg) {
  RunReport report;
  report.scenario = ScenarioId::Stiffness;
  Writer out(cfg.output_dir, cfg.plot, report);
  const auto& p = cfg.stiffness;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Csv table({"design", "trial", "force_n", "deflection_m", "fitted_deflection_m"});
  std::vector<plot::Series> series;

  for (const auto& design : p.designs) {
    std::vector<beam::DeflectionSample> exact;
    for (double load : p.loads)
      exact.push_back({load, beam::tip_deflection(design.bending_stiffness, p.radius, std::numbers::pi / 2.0, load)});
    const auto fit = beam::fit_stiffness(exact, p.radius);
    const double rel = std::abs(fit.bending_stiffness - design.bending_stiffness) / design.bending_stiffness;
    report.metrics.push_back({design.name + ".fitted_ei", fit.bending_stiffness, "N*m^2"});
    add_check(report, design.name + ".exact_fit_rel_error", rel, 0.0, p.exact_tolerance);
    for (const auto& s : exact)
      table.row(design.name, 0, s.force, s.deflection, fit.compliance_slope * s.force);

    plot::Series line{design.name + " fit", {0.0}, {0.0}, false};
    for (const auto& s : exact) {
      line.x.push_back(s.force);
      line.y.push_back(fit.compliance_slope * s.force);
    }

    double worst = 0.0;
    double mean_std = 0.0;
    for (int trial = 1; trial <= p.trials; ++trial) {
      std::vector<beam::DeflectionSample> noisy = exact;
      for (auto& s : noisy) s.deflection *= 1.0 + p.noise_fraction * gauss(rng);
      const auto nf = beam::fit_stiffness(noisy, p.radius);
      worst = std::max(worst, std::abs(nf.bending_stiffness - design.bending_stiffness) / design.bending_stiffness);
      mean_std += nf.std / p.trials;
      if (trial == 1) {
        plot::Series pts{design.name + " noisy", {}, {}, false};
        for (const auto& s : noisy) {
          table.row(design.name, trial, s.force, s.deflection, nf.compliance_slope * s.force);
          pts.x.push_back(s.force);
          pts.y.push_back(s.deflection);
        }
        series.push_back(std::move(pts));
      }
    }
    series.push_back(std::move(line));
    if (p.trials > 0) {
      report.metrics.push_back({design.name + ".noisy_mean_std", mean_std, "N*m^2"});
      add_check(report, design.name + ".noisy_worst_rel_error", worst, 0.0, p.noisy_tolerance);
    }
  }
  out.csv("stiffness.csv", table);
  out.svg("stiffness.svg", series, {"Tip deflection vs applied force", "force [N]", "deflection [m]", false});
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_geometry(const ScenarioConfig& cfg) {
  RunReport report;
  report.scenario = ScenarioId::Geometry;
  Writer out(cfg.output_dir, cfg.plot, report);
  const auto& arm = cfg.arm;
  const int n = cfg.geometry.sweep_points;
  const int per_arc = cfg.geometry.points_per_arc;
  const double d_max = geometry::max_separation(arm);

  Csv table({"d_m", "h_m", "area_m2", "major_m", "minor_m"});
  double best_area = -1.0;
  double best_d = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double d = d_max * i / (n + 1);
    const geometry::RingConfiguration rc{arm, d};
    const double area = geometry::enclosed_area(rc);
    const auto ext = geometry::axis_extents(rc, per_arc);
    table.row(d, geometry::lateral_offset(rc), area, ext.major, ext.minor);
    if (area > best_area) {
      best_area = area;
      best_d = d;
    }
  }
  out.csv("geometry.csv", table);

  const double d_star = geometry::area_maximizing_separation(arm);
  report.metrics.push_back({"max_area", best_area, "m^2"});
  report.metrics.push_back({"argmax_separation", best_d, "m"});
  add_check(report, "argmax_separation", best_d, d_star, d_max / (n + 1));
  if (std::abs(arm.arc_angle - std::numbers::pi / 2.0) < 1e-15) {
    const double circle = std::numbers::pi * arm.arc_radius * arm.arc_radius;
    const double closure = geometry::enclosed_area({arm, 2.0 * arm.arc_radius});
    report.metrics.push_back({"circle_area", closure, "m^2"});
    add_check(report, "circle_closure_rel_error", std::abs(closure - circle) / circle, 0.0, 1e-12);
  }

  std::vector<plot::Series> shapes;
  for (double frac : {0.5, 0.35, 0.65}) {
    const double d = frac == 0.5 ? d_star : frac * d_max;
    plot::Series s{fmt::format("d = {:.4g} m", d), {}, {}, true};
    for (const auto& pt : geometry::boundary_polyline({arm, d}, 64)) {
      s.x.push_back(pt.x);
      s.y.push_back(pt.y);
    }
    shapes.push_back(std::move(s));
  }
  out.svg("geometry.svg", shapes, {"Ring boundary", "x (screw axis) [m]", "y [m]", true});
  return report;
}

// ---------------------------------------------------------------------------

struct CrossingResult {
  std::size_t crossing_step = 0;
  std::size_t fault_step = 0;
  bool faulted = false;
};

// Drives the controller into a burst and locates the step at which the
// unconstrained pressure trajectory first reaches the burst pressure.
CrossingResult controller_burst(const ScenarioConfig& cfg, const pneumatics::InflatableSpec& target, bool is_ring) {
  auto ctl_cfg = cfg.controller;
  ctl_cfg.balloon = cfg.balloon.value_or(pneumatics::balloon_spec());
  ctl_cfg.ring = cfg.ring.value_or(pneumatics::ring_spec());
  ctl_cfg.setpoint_margin.reset();
  const double burst = *target.burst_pressure;
  double balloon_setpoint = 1.1 * burst;
  if (is_ring) {
    ctl_cfg.ring = target;
    ctl_cfg.ring_setpoint = 1.1 * burst;
    balloon_setpoint = ctl_cfg.balloon.reference_pressure;
  } else {
    ctl_cfg.balloon = target;
  }
  const controller::DeviceController ctl(ctl_cfg);
  const double dt = cfg.burst.controller_dt;

  auto shadow_spec = target;
  shadow_spec.burst_pressure.reset();
  auto reg = is_ring ? ctl_cfg.ring_regulator : ctl_cfg.balloon_regulator;
  reg.setpoint = is_ring ? ctl_cfg.ring_setpoint : balloon_setpoint;

  std::mt19937_64 ctl_rng(cfg.seed);
  std::mt19937_64 shadow_rng(cfg.seed);
  auto state = ctl.initial_state(cfg.arm, 2.0 * cfg.arm.arc_radius);
  auto shadow = pneumatics::deflated_state(shadow_spec);

  CrossingResult res;
  bool crossed = false;
  const std::size_t max_steps = static_cast<std::size_t>(std::ceil(600.0 / dt));
  for (std::size_t k = 1; k <= max_steps && !(crossed && res.faulted); ++k) {
    std::optional<controller::Command> cmd;
    if (k == 1) cmd = controller::InflateTo{balloon_setpoint};
    // The shadow only matches the controller when the regulators see no noise.
    if (!crossed) {
      shadow = pneumatics::step_pressure(shadow, shadow_spec, reg, dt, shadow_rng);
      if (shadow.gauge_pressure >= burst) {
        crossed = true;
        res.crossing_step = k;
      }
    }
    if (!res.faulted) {
      state = ctl.step(state, cmd, dt, ctl_rng).state;
      if (state.phase == controller::Phase::Fault) {
        res.faulted = true;
        res.fault_step = k;
      }
    }
  }
  return res;
}

RunReport run_burst(const ScenarioConfig& cfg) {
  RunReport report;
  report.scenario = ScenarioId::Burst;
  Writer out(cfg.output_dir, cfg.plot, report);
  const double step = cfg.burst.ramp_rate * cfg.burst.dt;
  std::vector<plot::Series> series;

  auto one = [&](const pneumatics::InflatableSpec& spec, const std::optional<double>& expected, bool is_ring) {
    const double burst = pneumatics::inflate_to_burst(spec, cfg.burst.ramp_rate, cfg.burst.dt);
    report.metrics.push_back({spec.name + ".burst_pressure", burst, "Pa"});
    if (expected) add_check(report, spec.name + ".burst_pressure", burst, *expected, step);

    Csv table({"t_s", "pressure_pa", "volume_m3", "burst"});
    plot::Series s{spec.name, {}, {}, false};
    for (long k = 0;; ++k) {
      const double p = step * static_cast<double>(k);
      const auto st = pneumatics::pressurized_state(spec, p);
      table.row(cfg.burst.dt * static_cast<double>(k), st.gauge_pressure, st.volume, st.burst ? 1 : 0);
      s.x.push_back(st.gauge_pressure);
      s.y.push_back(st.volume);
      if (st.burst) break;
    }
    out.csv("burst_" + spec.name + ".csv", table);
    s.x.pop_back();
    s.y.pop_back();
    series.push_back(std::move(s));

    const auto crossing = controller_burst(cfg, spec, is_ring);
    const double lag = crossing.faulted && crossing.crossing_step > 0
                           ? static_cast<double>(crossing.fault_step) - static_cast<double>(crossing.crossing_step)
                           : 1e9;
    report.metrics.push_back({spec.name + ".controller_fault_step", static_cast<double>(crossing.fault_step), "step"});
    add_check(report, spec.name + ".controller_fault_lag_steps", lag, 0.0, 1.0);
  };

  if (cfg.ring) one(*cfg.ring, cfg.expect.ring_burst, true);
  if (cfg.balloon) one(*cfg.balloon, cfg.expect.balloon_burst, false);
  for (auto& s : series) {
    // One chart for two volume scales reads poorly; plot relative volume instead.
    const double v0 = s.y.front();
    for (auto& v : s.y) v /= v0;
  }
  out.svg("burst.svg", series, {"Inflation up to burst", "gauge pressure [Pa]", "volume / deflated volume", false});
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_contact(const ScenarioConfig& cfg) {
  RunReport report;
  report.scenario = ScenarioId::Contact;
  Writer out(cfg.output_dir, cfg.plot, report);
  const auto model = cfg.contact_model();
  model.validate();
  const auto& c = cfg.contact;
  const auto n = static_cast<long>(std::floor((c.p_max - c.p_min) / c.p_step + 0.5));

  auto sweep = [&](const contact::ContactModel& m, const std::string& label) {
    plot::Series s{label, {}, {}, false};
    for (long i = 0; i <= n; ++i) {
      const double p = c.p_min + c.p_step * static_cast<double>(i);
      s.x.push_back(p);
      s.y.push_back(contact::contact_force(m, p));
    }
    return s;
  };

  const auto main = sweep(model, c.mode == "ring" ? fmt::format("ring-defined, beta = {:.3g}", c.blend) : "plate-defined");
  Csv table({"pressure_pa", "force_n"});
  double max_dev = 0.0;
  const double area = contact::effective_area(model);
  for (std::size_t i = 0; i < main.x.size(); ++i) {
    table.row(main.x[i], main.y[i]);
    max_dev = std::max(max_dev, std::abs(main.y[i] - area * main.x[i]));
  }
  out.csv("contact.csv", table);

  report.metrics.push_back({"effective_area", area, "m^2"});
  report.metrics.push_back({"force_at_hold_pressure", contact::contact_force(model, defaults::kBalloonHoldPressure), "N"});
  report.metrics.push_back(
      {"contact_pressure_at_hold_pressure", contact::contact_pressure(model, defaults::kBalloonHoldPressure), "Pa"});
  add_check(report, "force_linearity_abs_error", max_dev, 0.0, 0.0);

  std::vector<plot::Series> series{main};
  if (const auto* ring = std::get_if<contact::RingDefined>(&model.mode)) {
    auto naive = model;
    std::get<contact::RingDefined>(naive.mode).blend = 1.0;
    auto footprint = model;
    std::get<contact::RingDefined>(footprint.mode).blend = 0.0;
    const double p = defaults::kBalloonHoldPressure;
    const double ratio = contact::contact_force(naive, p) / contact::contact_force(footprint, p);
    const double expected = ring->ring_area / ring->footprint_area;
    report.metrics.push_back({"ring_area", ring->ring_area, "m^2"});
    report.metrics.push_back({"naive_to_footprint_force_ratio", ratio, ""});
    add_check(report, "naive_to_footprint_force_ratio", ratio, expected, 4.0 * 2.220446049250313e-16 * expected);
    if (c.blend != 1.0) series.push_back(sweep(naive, "ring-defined, beta = 1"));
    if (c.blend != 0.0) series.push_back(sweep(footprint, "footprint, beta = 0"));
  }
  out.svg("contact.svg", series, {"Contact force vs balloon pressure", "balloon gauge pressure [Pa]", "force [N]", false});
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_bleed(const ScenarioConfig& cfg) {
  RunReport report;
  report.scenario = ScenarioId::Bleed;
  Writer out(cfg.output_dir, cfg.plot, report);
  const auto scn = cfg.bleed_scenario();
  const auto& b = cfg.bleed;

  auto emit = [&](double applied, const std::string& file) {
    const auto sweep = hemostasis::pump_sweep(scn, applied, b.pump_min, b.pump_max, b.pump_step);
    Csv table({"pump_pa", "bleeding"});
    plot::Series s{fmt::format("applied {:.0f} Pa", applied), {}, {}, false};
    for (const auto& pt : sweep) {
      table.row(pt.pump_pressure, pt.bleeding ? 1 : 0);
      s.x.push_back(pt.pump_pressure);
      s.y.push_back(pt.bleeding ? 1.0 : 0.0);
    }
    out.csv(file, table);
    return std::pair{hemostasis::flip_point(sweep), s};
  };

  const auto [flip, with_series] = emit(b.applied_pressure, "bleed.csv");
  const auto [flip_open, open_series] = emit(0.0, "bleed_no_device.csv");

  report.metrics.push_back({"coupling", scn.coupling, ""});
  report.metrics.push_back({"threshold_with_device", hemostasis::bleeding_threshold(scn, b.applied_pressure), "Pa"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.metrics.push_back({"flip_point", flip.value_or(nan), "Pa"});
  report.metrics.push_back({"flip_point_no_device", flip_open.value_or(nan), "Pa"});
  if (flip && flip_open) report.metrics.push_back({"threshold_ratio", *flip / *flip_open, ""});

  auto at_onset = scn;
  at_onset.pump_pressure = b.open_threshold;
  add_flag(report, "no_bleeding_at_open_threshold_with_device", !hemostasis::is_bleeding(at_onset, b.applied_pressure));
  if (cfg.expect.bleed_flip) add_check(report, "flip_point", flip.value_or(1e300), *cfg.expect.bleed_flip, b.pump_step);
  if (cfg.expect.bleed_flip_no_device)
    add_check(report, "flip_point_no_device", flip_open.value_or(1e300), *cfg.expect.bleed_flip_no_device, b.pump_step);

  out.svg("bleed.svg", {with_series, open_series}, {"Bleeding vs pump pressure", "pump pressure [Pa]", "bleeding", false});
  return report;
}

// ---------------------------------------------------------------------------

std::string join_events(const std::vector<controller::Event>& events) {
  std::string s;
  for (const auto& e : events) {
    if (!s.empty()) s += "; ";
    s += controller::to_string(e.kind);
    if (!e.detail.empty()) s += ": " + e.detail;
  }
  std::replace(s.begin(), s.end(), '"', '\'');
  return "\"" + s + "\"";
}

RunReport run_full_device(const ScenarioConfig& cfg) {
  RunReport report;
  report.scenario = ScenarioId::FullDevice;
  Writer out(cfg.output_dir, cfg.plot, report);

  auto ctl_cfg = cfg.controller;
  ctl_cfg.balloon = cfg.balloon.value_or(pneumatics::balloon_spec());
  ctl_cfg.ring = cfg.ring.value_or(pneumatics::ring_spec());
  const controller::DeviceController ctl(ctl_cfg);
  const double d0 = cfg.device.initial_separation.value_or(2.0 * cfg.arm.arc_radius);
  const auto initial = ctl.initial_state(cfg.arm, d0);
  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.device.duration / cfg.device.dt));
  const auto traj = ctl.run_sequence(initial, cfg.device.script, cfg.device.dt, n_steps, cfg.seed);

  Csv table({"t_s", "phase", "d_m", "balloon_pa", "ring_pa", "events"});
  plot::Series balloon{"balloon", {}, {}, false};
  plot::Series ring{"ring", {}, {}, false};
  bool guard_ok = true;
  bool geometry_ok = true;
  std::size_t rejected = 0;
  const double d_max = geometry::max_separation(cfg.arm);
  for (const auto& r : traj) {
    const auto& s = r.state;
    table.row(s.time, controller::to_string(s.phase), s.ring_cfg.hinge_separation, s.balloon.gauge_pressure,
              s.ring_inflatable.gauge_pressure, join_events(r.events));
    balloon.x.push_back(s.time);
    balloon.y.push_back(s.balloon.gauge_pressure);
    ring.x.push_back(s.time);
    ring.y.push_back(s.ring_inflatable.gauge_pressure);
    if (s.phase == controller::Phase::Reshaping && s.balloon.gauge_pressure > s.torque_pressure_limit)
      guard_ok = false;
    if (!(s.ring_cfg.hinge_separation > 0.0 && s.ring_cfg.hinge_separation < d_max)) geometry_ok = false;
    for (const auto& e : r.events)
      if (e.kind == controller::EventKind::RejectedCommand) ++rejected;
  }
  out.csv("device.csv", table);

  const auto& final_state = traj.empty() ? initial : traj.back().state;
  const auto model = cfg.contact_model();
  const double applied = contact::contact_pressure(model, final_state.balloon.gauge_pressure);
  auto scn = cfg.bleed_scenario();
  scn.pump_pressure = cfg.device.pump_pressure;
  const bool bleeding = hemostasis::is_bleeding(scn, applied);

  report.metrics.push_back({"final_separation", final_state.ring_cfg.hinge_separation, "m"});
  report.metrics.push_back({"final_balloon_pressure", final_state.balloon.gauge_pressure, "Pa"});
  report.metrics.push_back({"applied_pressure", applied, "Pa"});
  report.metrics.push_back({"bleeding_threshold", hemostasis::bleeding_threshold(scn, applied), "Pa"});
  report.metrics.push_back({"bleeding", bleeding ? 1.0 : 0.0, ""});
  report.metrics.push_back({"rejected_commands", static_cast<double>(rejected), ""});
  if (cfg.expect.final_phase) add_flag(report, "final_phase_" + *cfg.expect.final_phase,
                                       controller::to_string(final_state.phase) == *cfg.expect.final_phase);
  add_flag(report, "no_bleeding_at_pump_pressure", !bleeding);
  add_flag(report, "torque_guard_respected", guard_ok);
  add_flag(report, "separation_within_limits", geometry_ok);

  out.svg("device.svg", {balloon, ring}, {"Device pressures", "time [s]", "gauge pressure [Pa]", false});
  return report;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Metric* RunReport::metric(const std::string& name) const {
  auto it = std::find_if(metrics.begin(), metrics.end(), [&](const Metric& m) { return m.name == name; });
  return it == metrics.end() ? nullptr : &*it;
}

const Check* RunReport::check(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

std::string RunReport::summary() const {
  std::string s = fmt::format("scenario {}\n", config::to_string(scenario));
  for (const auto& m : metrics) s += fmt::format("  {:<40} {:>16.10g} {}\n", m.name, m.value, m.unit);
  for (const auto& c : checks)
    s += fmt::format("  [{}] {:<38} value {:.10g}, expected {:.10g} +- {:.3g}\n", c.pass ? "PASS" : "FAIL", c.name,
                     c.value, c.expected, c.tolerance);
  for (const auto& a : artifacts) s += fmt::format("  wrote {}\n", a.string());
  return s;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = config::to_string(scenario);
  j["passed"] = passed();
  auto& metrics_json = j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : metrics) metrics_json.push_back({{"name", m.name}, {"value", m.value}, {"unit", m.unit}});
  auto& checks_json = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"name", c.name},
                           {"value", c.value},
                           {"expected", c.expected},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  auto& files = j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) files.push_back(a.string());
  return j.dump(2);
}

RunReport run(const ScenarioConfig& cfg) {
  config::validate(cfg);
  try {
    switch (cfg.scenario) {
      case ScenarioId::Stiffness: return run_stiffness(cfg);
      case ScenarioId::Geometry: return run_geometry(cfg);
      case ScenarioId::Burst: return run_burst(cfg);
      case ScenarioId::Contact: return run_contact(cfg);
      case ScenarioId::Bleed: return run_bleed(cfg);
      case ScenarioId::FullDevice: return run_full_device(cfg);
    }
  } catch (const IOError&) {
    throw;
  } catch (const std::exception& ex) {
    throw std::runtime_error(fmt::format("scenario {}: {}", config::to_string(cfg.scenario), ex.what()));
  }
  throw std::logic_error("unhandled scenario");
}

std::vector<beam::DeflectionSample> read_deflection_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "header", "empty file");

  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return cells;
  };

  const auto header = split(line);
  std::optional<std::size_t> force_col, defl_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto h = lower(header[i]);
    if (h == "force_n") force_col = i;
    if (h == "deflection_m") defl_col = i;
  }
  if (!force_col || !defl_col) throw ParseError(1, "header", "expected columns force_N and deflection_m");

  std::vector<beam::DeflectionSample> samples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    auto value = [&](std::size_t col, const char* name) {
      if (col >= cells.size()) throw ParseError(line_no, name, "missing value");
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[col], &used);
        if (used != cells[col].size()) throw std::invalid_argument("trailing characters");
        return v;
      } catch (const std::exception&) {
        throw ParseError(line_no, name, fmt::format("'{}' is not a number", cells[col]));
      }
    };
    samples.push_back({value(*force_col, "force_N"), value(*defl_col, "deflection_m")});
  }
  return samples;
}

RunReport run_stiffness_fit(const std::vector<beam::DeflectionSample>& samples, double radius,
                            const fs::path& output_dir, bool plot) {
  RunReport report;
  report.scenario = ScenarioId::Stiffness;
  Writer out(output_dir, plot, report);
  const auto fit = beam::fit_stiffness(samples, radius);
  report.metrics.push_back({"bending_stiffness", fit.bending_stiffness, "N*m^2"});
  report.metrics.push_back({"std", fit.std, "N*m^2"});
  report.metrics.push_back({"n_samples", static_cast<double>(fit.n_samples), ""});

  Csv summary({"bending_stiffness_nm2", "std_nm2", "n_samples"});
  summary.row(fit.bending_stiffness, fit.std, fit.n_samples);
  out.csv("stiffness_fit_summary.csv", summary);

  Csv table({"force_n", "deflection_m", "fitted_deflection_m"});
  plot::Series data{"measured", {}, {}, false};
  plot::Series line{"fit", {0.0}, {0.0}, false};
  auto sorted = samples;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.force < b.force; });
  for (const auto& s : sorted) {
    table.row(s.force, s.deflection, fit.compliance_slope * s.force);
    data.x.push_back(s.force);
    data.y.push_back(s.deflection);
    line.x.push_back(s.force);
    line.y.push_back(fit.compliance_slope * s.force);
  }
  out.csv("stiffness_fit.csv", table);
  out.svg("stiffness_fit.svg", {data, line}, {"Tip deflection vs applied force", "force [N]", "deflection [m]", false});
  return report;
}

}  // namespace ringbot::scenario
