#pragma once

/**
 * @file device_controller.hpp
 * @brief Deterministic state machine driving the ring motor and both pneumatic channels.
 *
 * Phases: Deflated -> (Reshaping | Inflating) -> Holding -> Deflating -> Deflated.
 * Fault is absorbing and is entered on any burst.
 *
 * The lead-screw motor stalls against a pressurized balloon, so reshaping is
 * only accepted, and only continues, while the balloon gauge pressure is at or
 * below the torque pressure limit. Rejections are events, never faults.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ringbot/defaults.hpp"
#include "ringbot/geometry.hpp"
#include "ringbot/pneumatics.hpp"

namespace ringbot::controller {

enum class Phase { Deflated, Reshaping, Inflating, Holding, Deflating, Fault };
enum class FaultReason { None, BalloonBurst, RingBurst };

const char* to_string(Phase p);
const char* to_string(FaultReason r);

struct Reshape {
  double target_separation = 0.0;  // m
};
struct InflateTo {
  double setpoint = 0.0;  // Pa gauge
};
struct Deflate {};
struct Stop {};

using Command = std::variant<Reshape, InflateTo, Deflate, Stop>;

std::string describe(const Command& cmd);

enum class EventKind {
  CommandAccepted,
  RejectedCommand,
  LimitReached,
  ReshapeComplete,
  ReshapeAborted,
  SetpointReached,
  DeflationComplete,
  Fault,
};

const char* to_string(EventKind k);

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::CommandAccepted;
  std::string detail;
};

struct ControllerConfig {
  pneumatics::InflatableSpec balloon = pneumatics::balloon_spec();
  pneumatics::InflatableSpec ring = pneumatics::ring_spec();
  pneumatics::RegulatorModel balloon_regulator{0.0, defaults::kRegulatorTimeConstant, defaults::kRegulatorMaxRate,
                                               0.0};
  pneumatics::RegulatorModel ring_regulator{0.0, defaults::kRegulatorTimeConstant, defaults::kRegulatorMaxRate,
                                            0.0};
  /// Ring channel pressure while the balloon is commanded above zero.
  double ring_setpoint = defaults::kRingReferencePressure;
  double torque_pressure_limit = defaults::kTorquePressureLimit;
  double holding_tolerance = defaults::kHoldingTolerance;
  /// InflateTo is rejected when setpoint >= burst - margin. Unset disables the check.
  std::optional<double> setpoint_margin = defaults::kSetpointSafetyMargin;
  double screw_lead = defaults::kScrewLead;                   // m/rev
  double screw_speed = defaults::kScrewSpeedRevPerSec;        // rev/s
  /// Reshape targets are clamped to [f * 2c, (1 - f) * 2c].
  double separation_margin_fraction = 0.01;

  void validate() const;
};

struct DeviceState {
  double time = 0.0;
  Phase phase = Phase::Deflated;
  FaultReason fault = FaultReason::None;
  geometry::RingConfiguration ring_cfg;
  double target_separation = 0.0;
  double balloon_setpoint = 0.0;
  pneumatics::PneumaticState balloon;
  pneumatics::PneumaticState ring_inflatable;
  double torque_pressure_limit = defaults::kTorquePressureLimit;
};

struct StepResult {
  DeviceState state;
  std::vector<Event> events;
};

struct ScheduledCommand {
  double time = 0.0;
  Command command;
};

using Trajectory = std::vector<StepResult>;

class DeviceController {
 public:
  explicit DeviceController(ControllerConfig config);

  const ControllerConfig& config() const { return config_; }

  /// Deflated device with the ring at separation d0.
  DeviceState initial_state(const geometry::ArmDesign& arm, double d0) const;

  /// Applies `cmd` (if any) at state.time, then advances the dynamics by dt > 0.
  StepResult step(const DeviceState& state, const std::optional<Command>& cmd, double dt,
                  std::mt19937_64& rng) const;

  /// Applies several commands at the same instant before advancing.
  StepResult step(const DeviceState& state, const std::vector<Command>& cmds, double dt,
                  std::mt19937_64& rng) const;

  /// Replays `script` (sorted by time) for n_steps steps of dt.
  /// Each command fires on the first step whose start time is >= its time stamp.
  /// Throws ConfigError if the script is unsorted.
  Trajectory run_sequence(const DeviceState& initial, const std::vector<ScheduledCommand>& script, double dt,
                          std::size_t n_steps, std::uint64_t seed) const;

 private:
  void apply(DeviceState& s, const Command& cmd, std::vector<Event>& events) const;
  void advance(DeviceState& s, double dt, std::mt19937_64& rng, std::vector<Event>& events) const;
  Phase settled_phase(const DeviceState& s) const;
  double min_separation(const geometry::ArmDesign& arm) const;
  double max_separation(const geometry::ArmDesign& arm) const;

  ControllerConfig config_;
};

}  // namespace ringbot::controller
