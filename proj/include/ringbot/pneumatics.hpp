#pragma once

/**
 * @file pneumatics.hpp
 * @brief Inflatable ring and airbag balloon: compliance, regulated inflation, burst.
 *
 * Compliance is linear between the deflated volume at 0 Pa and the reference
 * volume at the reference pressure, clamped at the tendon-limited max volume.
 * Burst is an instantaneous, irreversible loss of all gauge pressure.
 */

#include <optional>
#include <random>
#include <string>

namespace ringbot::pneumatics {

struct InflatableSpec {
  std::string name;
  double deflated_volume = 0.0;     // m^3
  double reference_volume = 0.0;    // m^3
  double reference_pressure = 0.0;  // Pa gauge
  double max_volume = 0.0;          // m^3
  std::optional<double> burst_pressure;  // Pa gauge; unset means never tested
  double wall_thickness = 0.0;      // m, metadata
  std::string failure_note;         // metadata

  /// Throws DomainError on a violated invariant.
  void validate() const;
};

InflatableSpec ring_spec();
InflatableSpec balloon_spec();

struct PneumaticState {
  double gauge_pressure = 0.0;  // Pa
  double volume = 0.0;          // m^3
  bool burst = false;

  friend bool operator==(const PneumaticState&, const PneumaticState&) = default;
};

struct RegulatorModel {
  double setpoint = 0.0;         // Pa gauge
  double time_constant = 0.5;    // s
  double max_rate = 5000.0;      // Pa/s
  double sensor_noise_sd = 0.0;  // Pa

  void validate() const;
};

/// Throws BurstError if p >= burst pressure and DomainError if p < 0.
double volume_at_pressure(const InflatableSpec& spec, double gauge_pressure);

/// Intact state at zero gauge pressure.
PneumaticState deflated_state(const InflatableSpec& spec);

/// State holding `gauge_pressure`, or the burst state when it reaches the burst pressure.
PneumaticState pressurized_state(const InflatableSpec& spec, double gauge_pressure);

/// One first-order regulator step of length dt with a rate clamp.
/// A burst state is absorbing. Noise is drawn from `rng` only when sensor_noise_sd > 0.
PneumaticState step_pressure(const PneumaticState& state, const InflatableSpec& spec, const RegulatorModel& reg,
                             double dt, std::mt19937_64& rng);

/// Slow ramp at `rate` Pa/s sampled every dt; returns the last commanded pressure before burst.
/// Throws ConfigError if the spec has no burst pressure.
double inflate_to_burst(const InflatableSpec& spec, double rate, double dt);

}  // namespace ringbot::pneumatics
