#include "ringbot/device_controller.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ringbot/errors.hpp"

namespace ringbot::controller {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Deflated: return "Deflated";
    case Phase::Reshaping: return "Reshaping";
    case Phase::Inflating: return "Inflating";
    case Phase::Holding: return "Holding";
    case Phase::Deflating: return "Deflating";
    case Phase::Fault: return "Fault";
  }
  return "?";
}

const char* to_string(FaultReason r) {
  switch (r) {
    case FaultReason::None: return "None";
    case FaultReason::BalloonBurst: return "BalloonBurst";
    case FaultReason::RingBurst: return "RingBurst";
  }
  return "?";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::CommandAccepted: return "CommandAccepted";
    case EventKind::RejectedCommand: return "RejectedCommand";
    case EventKind::LimitReached: return "LimitReached";
    case EventKind::ReshapeComplete: return "ReshapeComplete";
    case EventKind::ReshapeAborted: return "ReshapeAborted";
    case EventKind::SetpointReached: return "SetpointReached";
    case EventKind::DeflationComplete: return "DeflationComplete";
    case EventKind::Fault: return "Fault";
  }
  return "?";
}

std::string describe(const Command& cmd) {
  return std::visit(Overloaded{[](const Reshape& c) { return fmt::format("reshape {:.6g}", c.target_separation); },
                               [](const InflateTo& c) { return fmt::format("inflate {:.6g}", c.setpoint); },
                               [](const Deflate&) { return std::string("deflate"); },
                               [](const Stop&) { return std::string("stop"); }},
                    cmd);
}

void ControllerConfig::validate() const {
  balloon.validate();
  ring.validate();
  balloon_regulator.validate();
  ring_regulator.validate();
  if (!(ring_setpoint >= 0.0)) throw DomainError("ring setpoint must be >= 0");
  if (!(torque_pressure_limit >= 0.0)) throw DomainError("torque pressure limit must be >= 0");
  if (!(holding_tolerance > 0.0)) throw DomainError("holding tolerance must be > 0");
  if (setpoint_margin && !(*setpoint_margin >= 0.0)) throw DomainError("setpoint margin must be >= 0");
  if (!(screw_lead > 0.0) || !(screw_speed > 0.0)) throw DomainError("screw lead and speed must be > 0");
  if (!(separation_margin_fraction > 0.0 && separation_margin_fraction < 0.5))
    throw DomainError("separation margin fraction must lie in (0, 0.5)");
}

DeviceController::DeviceController(ControllerConfig config) : config_(std::move(config)) { config_.validate(); }

double DeviceController::min_separation(const geometry::ArmDesign& arm) const {
  return config_.separation_margin_fraction * geometry::max_separation(arm);
}

double DeviceController::max_separation(const geometry::ArmDesign& arm) const {
  return (1.0 - config_.separation_margin_fraction) * geometry::max_separation(arm);
}

DeviceState DeviceController::initial_state(const geometry::ArmDesign& arm, double d0) const {
  DeviceState s;
  s.ring_cfg = {arm, d0};
  geometry::lateral_offset(s.ring_cfg);  // validates d0
  s.target_separation = d0;
  s.balloon = pneumatics::deflated_state(config_.balloon);
  s.ring_inflatable = pneumatics::deflated_state(config_.ring);
  s.torque_pressure_limit = config_.torque_pressure_limit;
  return s;
}

Phase DeviceController::settled_phase(const DeviceState& s) const {
  const double tol = config_.holding_tolerance;
  if (s.balloon_setpoint <= 0.0)
    return (s.balloon.gauge_pressure <= tol && s.ring_inflatable.gauge_pressure <= tol) ? Phase::Deflated
                                                                                        : Phase::Deflating;
  return std::abs(s.balloon.gauge_pressure - s.balloon_setpoint) <= tol ? Phase::Holding : Phase::Inflating;
}

void DeviceController::apply(DeviceState& s, const Command& cmd, std::vector<Event>& events) const {
  const double t = s.time;
  auto reject = [&](std::string why) {
    events.push_back({t, EventKind::RejectedCommand, describe(cmd) + ": " + std::move(why)});
  };
  auto accept = [&] { events.push_back({t, EventKind::CommandAccepted, describe(cmd)}); };

  if (s.phase == Phase::Fault) {
    reject(fmt::format("device faulted ({})", to_string(s.fault)));
    return;
  }

  std::visit(
      Overloaded{
          [&](const Reshape& c) {
            if (s.balloon.gauge_pressure > s.torque_pressure_limit) {
              reject(fmt::format("balloon at {:.1f} Pa exceeds torque pressure limit {:.1f} Pa",
                                 s.balloon.gauge_pressure, s.torque_pressure_limit));
              return;
            }
            const double lo = min_separation(s.ring_cfg.arm);
            const double hi = max_separation(s.ring_cfg.arm);
            double target = c.target_separation;
            if (!std::isfinite(target)) {
              reject("target separation is not finite");
              return;
            }
            accept();
            if (target < lo || target > hi) {
              target = std::clamp(target, lo, hi);
              events.push_back({t, EventKind::LimitReached, fmt::format("target clamped to {:.6g} m", target)});
            }
            s.target_separation = target;
            s.phase = Phase::Reshaping;
          },
          [&](const InflateTo& c) {
            if (!(c.setpoint >= 0.0)) {
              reject("setpoint must be >= 0");
              return;
            }
            if (config_.setpoint_margin && config_.balloon.burst_pressure &&
                c.setpoint >= *config_.balloon.burst_pressure - *config_.setpoint_margin) {
              reject(fmt::format("setpoint within {:.1f} Pa of burst pressure", *config_.setpoint_margin));
              return;
            }
            if (s.phase == Phase::Reshaping) {
              reject("reshape in progress");
              return;
            }
            accept();
            s.balloon_setpoint = c.setpoint;
            s.phase = settled_phase(s);
            if (s.phase == Phase::Holding) s.phase = Phase::Inflating;  // promoted after the next update
          },
          [&](const Deflate&) {
            accept();
            s.balloon_setpoint = 0.0;
            s.target_separation = s.ring_cfg.hinge_separation;
            s.phase = Phase::Deflating;
          },
          [&](const Stop&) {
            accept();
            s.target_separation = s.ring_cfg.hinge_separation;
            if (s.balloon_setpoint > 0.0) s.balloon_setpoint = s.balloon.gauge_pressure;
            s.phase = settled_phase(s);
          }},
      cmd);
}

void DeviceController::advance(DeviceState& s, double dt, std::mt19937_64& rng, std::vector<Event>& events) const {
  const double t_end = s.time + dt;

  auto ring_reg = config_.ring_regulator;
  ring_reg.setpoint = s.balloon_setpoint > 0.0 ? config_.ring_setpoint : 0.0;
  auto balloon_reg = config_.balloon_regulator;
  balloon_reg.setpoint = s.balloon_setpoint;

  s.ring_inflatable = pneumatics::step_pressure(s.ring_inflatable, config_.ring, ring_reg, dt, rng);
  s.balloon = pneumatics::step_pressure(s.balloon, config_.balloon, balloon_reg, dt, rng);
  s.time = t_end;

  if (s.balloon.burst || s.ring_inflatable.burst) {
    s.phase = Phase::Fault;
    s.fault = s.balloon.burst ? FaultReason::BalloonBurst : FaultReason::RingBurst;
    s.balloon_setpoint = 0.0;
    s.target_separation = s.ring_cfg.hinge_separation;
    events.push_back({t_end, EventKind::Fault, to_string(s.fault)});
    return;
  }

  if (s.phase == Phase::Reshaping) {
    if (s.balloon.gauge_pressure > s.torque_pressure_limit) {
      s.target_separation = s.ring_cfg.hinge_separation;
      s.phase = settled_phase(s);
      events.push_back({t_end, EventKind::ReshapeAborted,
                        fmt::format("balloon at {:.1f} Pa exceeds torque pressure limit", s.balloon.gauge_pressure)});
      return;
    }
    const double travel = config_.screw_speed * config_.screw_lead * dt;
    double& d = s.ring_cfg.hinge_separation;
    const double remaining = s.target_separation - d;
    if (std::abs(remaining) <= travel) {
      d = s.target_separation;
      s.phase = settled_phase(s);
      events.push_back({t_end, EventKind::ReshapeComplete, fmt::format("d = {:.6g} m", d)});
    } else {
      d += std::copysign(travel, remaining);
    }
    return;
  }

  const Phase next = settled_phase(s);
  if (s.phase == Phase::Inflating && next == Phase::Holding)
    events.push_back({t_end, EventKind::SetpointReached, fmt::format("{:.1f} Pa", s.balloon_setpoint)});
  if (s.phase == Phase::Deflating && next == Phase::Deflated)
    events.push_back({t_end, EventKind::DeflationComplete, ""});
  if (s.phase != Phase::Deflated || next != Phase::Deflated) s.phase = next;
}

StepResult DeviceController::step(const DeviceState& state, const std::optional<Command>& cmd, double dt,
                                  std::mt19937_64& rng) const {
  std::vector<Command> cmds;
  if (cmd) cmds.push_back(*cmd);
  return step(state, cmds, dt, rng);
}

StepResult DeviceController::step(const DeviceState& state, const std::vector<Command>& cmds, double dt,
                                  std::mt19937_64& rng) const {
  if (!(dt > 0.0)) throw DomainError("controller step needs dt > 0");
  StepResult out{state, {}};
  for (const auto& c : cmds) apply(out.state, c, out.events);
  if (out.state.phase == Phase::Fault) {
    out.state.time += dt;
    return out;
  }
  advance(out.state, dt, rng, out.events);
  return out;
}

Trajectory DeviceController::run_sequence(const DeviceState& initial, const std::vector<ScheduledCommand>& script,
                                          double dt, std::size_t n_steps, std::uint64_t seed) const {
  if (!std::is_sorted(script.begin(), script.end(),
                      [](const ScheduledCommand& a, const ScheduledCommand& b) { return a.time < b.time; }))
    throw ConfigError("command script is not sorted by time");
  if (!(dt > 0.0)) throw DomainError("run_sequence needs dt > 0");

  std::mt19937_64 rng(seed);
  Trajectory traj;
  traj.reserve(n_steps);
  DeviceState s = initial;
  std::size_t next = 0;
  const double t0 = initial.time;
  for (std::size_t k = 0; k < n_steps; ++k) {
    // Step start time from the index, so long runs do not accumulate drift.
    const double t_start = t0 + dt * static_cast<double>(k);
    s.time = t_start;
    std::vector<Command> due;
    while (next < script.size() && script[next].time <= t_start + 1e-9 * dt) due.push_back(script[next++].command);
    auto r = step(s, due, dt, rng);
    s = r.state;
    traj.push_back(std::move(r));
  }
  return traj;
}

}  // namespace ringbot::controller
