#pragma once

/**
 * @file config.hpp
 * @brief Scenario configuration: a sectioned `key = value` text format.
 *
 * Example:
 *
 *     scenario = full_device
 *     seed = 7
 *
 *     [inflatable.balloon]
 *     burst_pressure_pa = 18620
 *
 *     [script]
 *     at = 0.0 reshape 0.22
 *     at = 6.0 inflate 8270
 *
 * `#` and `;` start comments. Keys are unique within a section except `at`
 * in [script]. All quantities are SI; key suffixes name the unit.
 */

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringbot/beam_mechanics.hpp"
#include "ringbot/contact_force.hpp"
#include "ringbot/device_controller.hpp"
#include "ringbot/geometry.hpp"
#include "ringbot/hemostasis.hpp"
#include "ringbot/pneumatics.hpp"

namespace ringbot::config {

struct Entry {
  std::string section;  // "" for top-level keys
  std::string key;
  std::string value;
  int line = 0;
};

/// Raw parse; throws ParseError on malformed lines.
std::vector<Entry> parse_entries(const std::string& text);

enum class ScenarioId { Stiffness, Geometry, Burst, Contact, Bleed, FullDevice };

const char* to_string(ScenarioId id);
std::optional<ScenarioId> scenario_from_string(const std::string& s);

struct StiffnessDesign {
  std::string name;
  double bending_stiffness = 0.0;  // ground truth used to synthesize data
};

struct StiffnessParams {
  double radius = defaults::kArmRadius;
  std::vector<double> loads{1e-4, 2e-4, 3e-4, 4e-4};  // N
  std::vector<StiffnessDesign> designs{{"standard", defaults::kStiffnessStandard},
                                       {"cutout", defaults::kStiffnessCutout},
                                       {"ridges", defaults::kStiffnessRidges}};
  double noise_fraction = 0.02;
  int trials = 100;
  double exact_tolerance = 1e-3;
  double noisy_tolerance = 0.05;
};

struct GeometryParams {
  int sweep_points = 1000;
  int points_per_arc = 256;
};

struct BurstParams {
  double ramp_rate = 100.0;  // Pa/s
  double dt = 0.1;           // s
  double controller_dt = 0.01;
};

struct ContactParams {
  std::string mode = "plate";
  double plate_area = 0.01;
  std::optional<double> ring_area;  // defaults to the enclosed area at `separation`
  std::optional<double> separation;
  std::optional<double> footprint_area;
  double blend = 0.0;
  std::optional<double> spread_area;
  double atmospheric_pressure = defaults::kAtmosphericPressure;
  double p_min = 0.0;
  double p_max = 12000.0;
  double p_step = 100.0;
};

struct BleedParams {
  double open_threshold = defaults::kBleedOnsetNoDevice;
  double threshold_with_device = defaults::kBleedOnsetWithDevice;
  double calibration_applied = defaults::kBalloonHoldPressure;
  std::optional<double> coupling;  // overrides the calibration when set
  double applied_pressure = defaults::kBalloonHoldPressure;
  double pump_min = 0.0;
  double pump_max = 12000.0;
  double pump_step = 1.0;
};

struct DeviceParams {
  std::optional<double> initial_separation;  // defaults to 2R
  double dt = 0.01;
  double duration = 20.0;
  /// Pump pressure at which bleeding is checked after the run.
  double pump_pressure = defaults::kBleedOnsetNoDevice;
  std::vector<controller::ScheduledCommand> script{
      {0.0, controller::Reshape{0.22}},
      {6.0, controller::InflateTo{defaults::kBalloonHoldPressure}},
  };
};

/// Expected headline values; a check runs only when its expectation is set.
struct Expectations {
  std::optional<double> ring_burst = defaults::kRingBurstPressure;
  std::optional<double> balloon_burst = defaults::kBalloonBurstPressure;
  std::optional<double> bleed_flip = defaults::kBleedOnsetWithDevice;
  std::optional<double> bleed_flip_no_device = defaults::kBleedOnsetNoDevice;
  std::optional<std::string> final_phase = std::string("Holding");
};

struct ScenarioConfig {
  ScenarioId scenario = ScenarioId::FullDevice;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = ".";
  bool plot = false;

  geometry::ArmDesign arm = geometry::standard_arm();
  std::optional<pneumatics::InflatableSpec> ring;
  std::optional<pneumatics::InflatableSpec> balloon;
  controller::ControllerConfig controller;

  StiffnessParams stiffness;
  GeometryParams geometry;
  BurstParams burst;
  ContactParams contact;
  BleedParams bleed;
  DeviceParams device;
  Expectations expect;

  contact::ContactModel contact_model() const;
  hemostasis::BleedScenario bleed_scenario() const;
};

/// All defaults for `id`, with both inflatables present.
ScenarioConfig default_config(ScenarioId id);

/// Parses and validates config text. Throws ParseError or ValidationError.
/// `scenario`, when given, supplies the scenario if the text has none and must
/// match it otherwise.
ScenarioConfig parse_config(const std::string& text, std::optional<ScenarioId> scenario = std::nullopt);

/// Reads `path` and parses it. Throws ConfigError if the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path,
                           std::optional<ScenarioId> scenario = std::nullopt);

/// Throws ValidationError listing every violation.
void validate(const ScenarioConfig& cfg);

}  // namespace ringbot::config
