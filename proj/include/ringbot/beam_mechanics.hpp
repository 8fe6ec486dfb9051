#pragma once

/**
 * @file beam_mechanics.hpp
 * @brief Out-of-plane tip deflection of a pre-curved cantilever ring arm.
 *
 * The arm is a circular arc of radius R and angle phi, clamped at its base and
 * loaded by a tip force P normal to its plane. Only bending strain energy is
 * kept. The bending moment at arc angle theta from the tip is M = P R sin(theta),
 * so Castigliano's theorem gives
 *
 *   q = int_0^phi (M / EI) (dM/dP) R dtheta = (P R^3 / EI) (phi/2 - sin(2 phi)/4).
 *
 * For a quarter arc this is q = (pi/4) P R^3 / EI.
 */

#include <cstddef>
#include <span>

namespace ringbot::beam {

struct DeflectionSample {
  double force = 0.0;       // N
  double deflection = 0.0;  // m
};

struct StiffnessEstimate {
  double bending_stiffness = 0.0;  // N m^2
  double std = 0.0;                // N m^2
  std::size_t n_samples = 0;
  double compliance_slope = 0.0;   // m/N, fitted q/P
};

/// M = P R sin(theta). Throws DomainError unless 0 <= theta <= arc_angle.
double moment_at(double force, double radius, double theta, double arc_angle);

/// dM/dP = R sin(theta).
double moment_sensitivity(double radius, double theta);

/// Dimensionless factor phi/2 - sin(2 phi)/4 multiplying P R^3 / EI.
double compliance_factor(double arc_angle);

double tip_deflection(double bending_stiffness, double radius, double arc_angle, double force);

/// Composite trapezoidal quadrature of the Castigliano integral over n_segments panels.
double tip_deflection_numeric(double bending_stiffness, double radius, double arc_angle, double force,
                              std::size_t n_segments);

/// EI = (pi/4) P R^3 / q for a quarter-circle arm.
double stiffness_from_point(double force, double deflection, double radius);

/// Least-squares line q = s P through the origin, then EI = (pi/4) R^3 / s.
StiffnessEstimate fit_stiffness(std::span<const DeflectionSample> samples, double radius);

}  // namespace ringbot::beam
