// ringbot: scenario runner for the ring hemorrhage-control device model.
//
//   ringbot <scenario> [--config PATH] [--plot] [--seed N] [--out DIR]
//   ringbot stiffness-fit DATA.csv --radius-m R [--out DIR] [--plot]
//
// Scenarios: stiffness, geometry, burst, contact, bleed, full_device.
// Exit codes: 0 pass, 2 expectation failed, 1 error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ringbot/config.hpp"
#include "ringbot/errors.hpp"
#include "ringbot/scenario.hpp"

namespace {

using ringbot::config::ScenarioConfig;
using ringbot::config::ScenarioId;

struct CommonOptions {
  std::string config_path;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool json = false;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "Scenario config file");
  sub->add_flag("--plot", o.plot, "Also write SVG plots");
  sub->add_option("--seed", o.seed, "RNG seed (default from config, else 0)");
  sub->add_option("--out", o.out, "Output directory (default from config, else .)");
  sub->add_flag("--json", o.json, "Print the run report as JSON");
}

ScenarioConfig base_config(ScenarioId id, const CommonOptions& o) {
  ScenarioConfig cfg = o.config_path.empty() ? ringbot::config::default_config(id)
                                             : ringbot::config::load_config(o.config_path, id);
  if (o.plot) cfg.plot = true;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  return cfg;
}

int report(const ringbot::scenario::RunReport& r, bool json) {
  std::cout << (json ? r.to_json() + "\n" : r.summary());
  return r.exit_code();
}

// Parses "lo:hi:step".
std::tuple<double, double, double> parse_range(const std::string& s, const char* flag) {
  double lo = 0, hi = 0, step = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &tail) != 3)
    throw CLI::ValidationError(flag, "expected LO:HI:STEP, got '" + s + "'");
  return {lo, hi, step};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital twin of a shape-changing ring device for hemorrhage control"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* stiffness = app.add_subcommand("stiffness", "Identify arm bending stiffness from synthetic load tests");
  auto* geometry = app.add_subcommand("geometry", "Sweep hinge separation; dump area and extents");
  auto* burst = app.add_subcommand("burst", "Ramp inflatables to burst");
  auto* contact = app.add_subcommand("contact", "Contact force vs balloon pressure");
  auto* bleed = app.add_subcommand("bleed", "Bleeding onset sweep");
  auto* device = app.add_subcommand("full_device", "Scripted device run composed with the bleeding model");
  device->alias("full-device");
  for (auto* sub : {stiffness, geometry, burst, contact, bleed, device}) add_common(sub, common);

  std::optional<std::string> contact_mode;
  std::optional<double> plate_area, ring_area, footprint_area, blend, spread_area;
  std::optional<std::string> pressure_sweep;
  contact->add_option("--mode", contact_mode, "plate | ring")->check(CLI::IsMember({"plate", "ring"}));
  contact->add_option("--plate-area", plate_area, "Plate area [m^2]");
  contact->add_option("--ring-area", ring_area, "Ring-enclosed area [m^2]");
  contact->add_option("--footprint-area", footprint_area, "Balloon footprint area [m^2]");
  contact->add_option("--blend", blend, "Blend beta in [0, 1]");
  contact->add_option("--spread-area", spread_area, "Pressure-spreading area [m^2]");
  contact->add_option("--pressure-sweep", pressure_sweep, "LO:HI:STEP in Pa");

  std::optional<std::string> pump_sweep;
  std::optional<double> applied_pressure;
  bleed->add_option("--pump-sweep", pump_sweep, "LO:HI:STEP in Pa");
  bleed->add_option("--applied-pressure", applied_pressure, "Device pressure on the wound [Pa]");

  std::optional<int> sweep_points;
  geometry->add_option("--sweep-points", sweep_points, "Number of separations sampled");

  auto* fit = app.add_subcommand("stiffness-fit", "Fit EI to measured (force_N, deflection_m) CSV data");
  std::string data_path;
  double radius = 0.0;
  std::string fit_out = ".";
  bool fit_plot = false;
  fit->add_option("data", data_path, "CSV with force_N and deflection_m columns")->required()->check(CLI::ExistingFile);
  fit->add_option("--radius-m", radius, "Arm arc radius [m]")->required();
  fit->add_option("--out", fit_out, "Output directory");
  fit->add_flag("--plot", fit_plot, "Also write an SVG plot");
  fit->add_flag("--json", common.json, "Print the run report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit->parsed()) {
      const auto samples = ringbot::scenario::read_deflection_csv(data_path);
      return report(ringbot::scenario::run_stiffness_fit(samples, radius, fit_out, fit_plot), common.json);
    }

    CLI::App* chosen = app.get_subcommands().front();
    const auto id = ringbot::config::scenario_from_string(chosen->get_name());
    ScenarioConfig cfg = base_config(*id, common);

    if (chosen == contact) {
      if (contact_mode) cfg.contact.mode = *contact_mode;
      if (plate_area) cfg.contact.plate_area = *plate_area;
      if (ring_area) cfg.contact.ring_area = *ring_area;
      if (footprint_area) cfg.contact.footprint_area = *footprint_area;
      if (blend) cfg.contact.blend = *blend;
      if (spread_area) cfg.contact.spread_area = *spread_area;
      if (pressure_sweep) std::tie(cfg.contact.p_min, cfg.contact.p_max, cfg.contact.p_step) =
          parse_range(*pressure_sweep, "--pressure-sweep");
    }
    if (chosen == bleed) {
      if (pump_sweep) std::tie(cfg.bleed.pump_min, cfg.bleed.pump_max, cfg.bleed.pump_step) =
          parse_range(*pump_sweep, "--pump-sweep");
      if (applied_pressure) cfg.bleed.applied_pressure = *applied_pressure;
    }
    if (chosen == geometry && sweep_points) cfg.geometry.sweep_points = *sweep_points;

    return report(ringbot::scenario::run(cfg), common.json);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
