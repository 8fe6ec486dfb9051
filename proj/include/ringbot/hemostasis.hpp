#pragma once

// Bleeding onset model: blood flows once the pump pressure exceeds a threshold
// that rises linearly with the pressure applied by the device,
//   threshold = P0 + k * p_applied.
// Calibrated from two onset readings (without and with the device applied).

#include <optional>
#include <vector>

#include "ringbot/defaults.hpp"

namespace ringbot::hemostasis {

struct BleedScenario {
  double open_threshold = defaults::kBleedOnsetNoDevice;  // P0, Pa gauge
  double coupling = 0.0;                                  // k
  double pump_pressure = 0.0;                             // Pa gauge

  void validate() const;
};

/// k = (threshold_with_device - P0) / p_applied. Throws DomainError if p_applied <= 0.
double calibrate_coupling(double open_threshold, double threshold_with_device, double applied_pressure);

/// Scenario calibrated on the casualty-simulation readings.
BleedScenario default_scenario();

double bleeding_threshold(const BleedScenario& scn, double applied_pressure);

/// Strict: at exactly the threshold there is no bleeding.
bool is_bleeding(const BleedScenario& scn, double applied_pressure);

struct SweepPoint {
  double pump_pressure = 0.0;
  bool bleeding = false;
};

/// Pump pressures lo, lo+step, ..., up to and including hi (within half a step).
std::vector<SweepPoint> pump_sweep(BleedScenario scn, double applied_pressure, double lo, double hi, double step);

/// First swept pump pressure that bleeds, if any.
std::optional<double> flip_point(const std::vector<SweepPoint>& sweep);

}  // namespace ringbot::hemostasis
