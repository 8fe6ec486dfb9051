#include "ringbot/hemostasis.hpp"

#include <cmath>

#include "ringbot/errors.hpp"

namespace ringbot::hemostasis {

void BleedScenario::validate() const {
  if (!(open_threshold > 0.0)) throw DomainError("open bleeding threshold must be > 0");
  if (!(coupling >= 0.0)) throw DomainError("coupling must be >= 0");
  if (!(pump_pressure >= 0.0)) throw DomainError("pump pressure must be >= 0");
}

double calibrate_coupling(double open_threshold, double threshold_with_device, double applied_pressure) {
  if (!(applied_pressure > 0.0)) throw DomainError("calibration needs a positive applied pressure");
  if (threshold_with_device < open_threshold)
    throw DomainError("threshold with device must not be below the open threshold");
  return (threshold_with_device - open_threshold) / applied_pressure;
}

BleedScenario default_scenario() {
  BleedScenario scn;
  scn.open_threshold = defaults::kBleedOnsetNoDevice;
  scn.coupling = calibrate_coupling(defaults::kBleedOnsetNoDevice, defaults::kBleedOnsetWithDevice,
                                    defaults::kBalloonHoldPressure);
  return scn;
}

double bleeding_threshold(const BleedScenario& scn, double applied_pressure) {
  if (applied_pressure < 0.0) throw DomainError("applied pressure must be >= 0");
  return scn.open_threshold + scn.coupling * applied_pressure;
}

bool is_bleeding(const BleedScenario& scn, double applied_pressure) {
  return scn.pump_pressure > bleeding_threshold(scn, applied_pressure);
}

std::vector<SweepPoint> pump_sweep(BleedScenario scn, double applied_pressure, double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo || lo < 0.0) throw DomainError("pump sweep needs 0 <= lo <= hi and step > 0");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  std::vector<SweepPoint> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) {
    scn.pump_pressure = lo + step * static_cast<double>(i);
    out.push_back({scn.pump_pressure, is_bleeding(scn, applied_pressure)});
  }
  return out;
}

std::optional<double> flip_point(const std::vector<SweepPoint>& sweep) {
  for (const auto& p : sweep)
    if (p.bleeding) return p.pump_pressure;
  return std::nullopt;
}

}  // namespace ringbot::hemostasis
