#pragma once

/**
 * @file contact_force.hpp
 * @brief Force delivered to a surface by the pressurized balloon, F = A (P_balloon - P_atm).
 *
 * Two ways of choosing A:
 *  - plate-defined: a plate of known area is the only contact surface;
 *  - ring-defined: A blends the area enclosed by the ring with a
 *    configuration-independent balloon footprint, A = beta*ring + (1-beta)*footprint.
 *
 * beta = 1 takes the ring-enclosed area at face value; beta = 0 ignores the
 * ring shape entirely.
 */

#include <optional>
#include <variant>

#include "ringbot/defaults.hpp"

namespace ringbot::contact {

struct PlateDefined {
  double plate_area = 0.0;  // m^2
};

struct RingDefined {
  double ring_area = 0.0;       // m^2, from geometry::enclosed_area
  double footprint_area = 0.0;  // m^2
  double blend = 0.0;           // beta in [0, 1]
};

struct ContactModel {
  std::variant<PlateDefined, RingDefined> mode;
  double atmospheric_pressure = defaults::kAtmosphericPressure;  // Pa absolute
  /// Area over which the force spreads when reporting contact pressure.
  /// Unset means the force-generating area.
  std::optional<double> spread_area;

  /// Throws DomainError on a violated invariant.
  void validate() const;
};

double effective_area(const ContactModel& model);

/// Force from gauge balloon pressure. Throws DomainError if negative.
double contact_force(const ContactModel& model, double balloon_gauge_pressure);

/// Same force, from absolute balloon pressure referenced to the model's atmosphere.
double contact_force_absolute(const ContactModel& model, double balloon_absolute_pressure);

/// Force divided by the spread area; equals the gauge pressure unless spread_area overrides.
double contact_pressure(const ContactModel& model, double balloon_gauge_pressure);

}  // namespace ringbot::contact
