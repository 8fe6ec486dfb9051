#include "ringbot/pneumatics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ringbot/defaults.hpp"
#include "ringbot/errors.hpp"

namespace ringbot::pneumatics {

void InflatableSpec::validate() const {
  if (!(deflated_volume > 0.0 && deflated_volume < reference_volume && reference_volume <= max_volume))
    throw DomainError(fmt::format("inflatable '{}': need 0 < deflated < reference <= max volume", name));
  if (!(reference_pressure > 0.0))
    throw DomainError(fmt::format("inflatable '{}': reference pressure must be > 0", name));
  if (burst_pressure && !(*burst_pressure > reference_pressure))
    throw DomainError(fmt::format("inflatable '{}': burst pressure must exceed reference pressure", name));
}

InflatableSpec ring_spec() {
  InflatableSpec s;
  s.name = "ring";
  s.deflated_volume = defaults::kRingDeflatedVolume;
  s.reference_volume = defaults::kRingReferenceVolume;
  s.reference_pressure = defaults::kRingReferencePressure;
  s.max_volume = defaults::kRingReferenceVolume * defaults::kRingMaxVolumeFactor;
  s.burst_pressure = defaults::kRingBurstPressure;
  s.wall_thickness = defaults::kRingWallThickness;
  s.failure_note = "seal on the inside edge; inconsistent sealed-margin thickness";
  return s;
}

InflatableSpec balloon_spec() {
  InflatableSpec s;
  s.name = "balloon";
  s.deflated_volume = defaults::kBalloonDeflatedVolume;
  s.reference_volume = defaults::kBalloonReferenceVolume;
  s.reference_pressure = defaults::kBalloonReferencePressure;
  s.max_volume = defaults::kBalloonReferenceVolume * defaults::kBalloonMaxVolumeFactor;
  s.burst_pressure = defaults::kBalloonBurstPressure;
  s.wall_thickness = defaults::kBalloonWallThickness;
  s.failure_note = "film slipping at the rubber-banded plug attachment";
  return s;
}

void RegulatorModel::validate() const {
  if (!(time_constant > 0.0)) throw DomainError("regulator time constant must be > 0");
  if (!(max_rate > 0.0)) throw DomainError("regulator max rate must be > 0");
  if (!(sensor_noise_sd >= 0.0)) throw DomainError("regulator sensor noise sd must be >= 0");
}

double volume_at_pressure(const InflatableSpec& spec, double gauge_pressure) {
  if (gauge_pressure < 0.0) throw DomainError("gauge pressure must be >= 0");
  if (spec.burst_pressure && gauge_pressure >= *spec.burst_pressure)
    throw BurstError(fmt::format("{}: {} Pa reaches burst pressure {} Pa", spec.name, gauge_pressure,
                                 *spec.burst_pressure));
  const double v = spec.deflated_volume +
                   (spec.reference_volume - spec.deflated_volume) * (gauge_pressure / spec.reference_pressure);
  return std::min(v, spec.max_volume);
}

PneumaticState deflated_state(const InflatableSpec& spec) { return {0.0, spec.deflated_volume, false}; }

PneumaticState pressurized_state(const InflatableSpec& spec, double gauge_pressure) {
  if (spec.burst_pressure && gauge_pressure >= *spec.burst_pressure) return {0.0, spec.deflated_volume, true};
  const double p = std::max(0.0, gauge_pressure);
  return {p, volume_at_pressure(spec, p), false};
}

PneumaticState step_pressure(const PneumaticState& state, const InflatableSpec& spec, const RegulatorModel& reg,
                             double dt, std::mt19937_64& rng) {
  if (state.burst || dt <= 0.0) return state;

  double measured = state.gauge_pressure;
  if (reg.sensor_noise_sd > 0.0) measured += std::normal_distribution<double>(0.0, reg.sensor_noise_sd)(rng);

  double delta = (reg.setpoint - measured) * (1.0 - std::exp(-dt / reg.time_constant));
  const double max_delta = reg.max_rate * dt;
  delta = std::clamp(delta, -max_delta, max_delta);
  return pressurized_state(spec, state.gauge_pressure + delta);
}

double inflate_to_burst(const InflatableSpec& spec, double rate, double dt) {
  if (!spec.burst_pressure) throw ConfigError(fmt::format("{}: burst pressure is not set", spec.name));
  if (!(rate > 0.0) || !(dt > 0.0)) throw DomainError("inflate_to_burst: rate and dt must be > 0");

  const double increment = rate * dt;
  double last_intact = 0.0;
  for (long k = 1;; ++k) {
    const double commanded = increment * static_cast<double>(k);
    if (pressurized_state(spec, commanded).burst) return last_intact;
    last_intact = commanded;
  }
}

}  // namespace ringbot::pneumatics
