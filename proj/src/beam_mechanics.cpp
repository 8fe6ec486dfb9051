#include "ringbot/beam_mechanics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "ringbot/errors.hpp"

namespace ringbot::beam {

namespace {

constexpr double kQuarterArcFactor = std::numbers::pi / 4.0;

void check_beam(double bending_stiffness, double radius, double arc_angle) {
  if (!(bending_stiffness > 0.0)) throw DomainError("bending stiffness must be > 0");
  if (!(radius > 0.0)) throw DomainError("arc radius must be > 0");
  if (!(arc_angle > 0.0 && arc_angle <= std::numbers::pi)) throw DomainError("arc angle must lie in (0, pi]");
}

}  // namespace

double moment_at(double force, double radius, double theta, double arc_angle) {
  if (!(theta >= 0.0 && theta <= arc_angle))
    throw DomainError(fmt::format("theta = {} outside [0, {}]", theta, arc_angle));
  return force * radius * std::sin(theta);
}

double moment_sensitivity(double radius, double theta) { return radius * std::sin(theta); }

double compliance_factor(double arc_angle) { return arc_angle / 2.0 - std::sin(2.0 * arc_angle) / 4.0; }

double tip_deflection(double bending_stiffness, double radius, double arc_angle, double force) {
  check_beam(bending_stiffness, radius, arc_angle);
  if (force < 0.0) throw DomainError("tip force must be >= 0");
  return force * radius * radius * radius / bending_stiffness * compliance_factor(arc_angle);
}

double tip_deflection_numeric(double bending_stiffness, double radius, double arc_angle, double force,
                              std::size_t n_segments) {
  check_beam(bending_stiffness, radius, arc_angle);
  if (force < 0.0) throw DomainError("tip force must be >= 0");
  if (n_segments < 2) throw DomainError("quadrature needs at least 2 segments");

  const double step = arc_angle / static_cast<double>(n_segments);
  // ds = R dtheta
  auto integrand = [&](double theta) {
    return moment_at(force, radius, theta, arc_angle) / bending_stiffness * moment_sensitivity(radius, theta) *
           radius;
  };
  double sum = 0.5 * (integrand(0.0) + integrand(arc_angle));
  for (std::size_t i = 1; i < n_segments; ++i) sum += integrand(step * static_cast<double>(i));
  return sum * step;
}

double stiffness_from_point(double force, double deflection, double radius) {
  if (!(force > 0.0)) throw DomainError("stiffness_from_point: force must be > 0");
  if (!(deflection > 0.0)) throw DomainError("stiffness_from_point: deflection must be > 0");
  if (!(radius > 0.0)) throw DomainError("stiffness_from_point: radius must be > 0");
  return kQuarterArcFactor * force * radius * radius * radius / deflection;
}

StiffnessEstimate fit_stiffness(std::span<const DeflectionSample> samples, double radius) {
  if (!(radius > 0.0)) throw DomainError("fit_stiffness: radius must be > 0");
  if (samples.size() < 2) throw FitError("fit_stiffness needs at least 2 samples");

  double spp = 0.0;
  double spq = 0.0;
  for (const auto& s : samples) {
    if (s.force < 0.0 || s.deflection < 0.0) throw FitError("fit_stiffness: samples must be nonnegative");
    spp += s.force * s.force;
    spq += s.force * s.deflection;
  }
  if (!(spp > 0.0)) throw FitError("fit_stiffness: every sample has zero force");
  const double slope = spq / spp;
  if (!(slope > 0.0)) throw FitError("fit_stiffness: fitted compliance is not positive");

  double ssr = 0.0;
  for (const auto& s : samples) {
    const double r = s.deflection - slope * s.force;
    ssr += r * r;
  }
  // One fitted parameter.
  const double residual_var = ssr / static_cast<double>(samples.size() - 1);
  const double slope_std = std::sqrt(residual_var / spp);

  const double r3 = radius * radius * radius;
  StiffnessEstimate est;
  est.compliance_slope = slope;
  est.bending_stiffness = kQuarterArcFactor * r3 / slope;
  est.std = kQuarterArcFactor * r3 / (slope * slope) * slope_std;
  est.n_samples = samples.size();
  return est;
}

}  // namespace ringbot::beam
