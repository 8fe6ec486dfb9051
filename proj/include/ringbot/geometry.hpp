#pragma once

/**
 * @file geometry.hpp
 * @brief Kinematics of the shape-changing ring.
 *
 * Four identical rigid circular-arc arms are pinned at two housings on the
 * lead-screw axis (x axis, at +-d/2) and at two lateral hinges on the y axis
 * (at +-h). Each arm spans the chord between a housing and a lateral hinge and
 * bulges outward. d = 2R closes the quarter-circle arms into a circle; any
 * other separation gives an elongated (along x) or squeezed shape.
 */

#include <string>
#include <vector>

#include "ringbot/defaults.hpp"

namespace ringbot::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Geometry and bending stiffness of one ring arm.
struct ArmDesign {
  std::string name = "standard";
  double arc_radius = defaults::kArmRadius;
  double arc_angle = defaults::kArmArcAngle;
  double thickness = defaults::kArmThickness;
  double web_thickness = defaults::kArmThickness;
  double bending_stiffness = defaults::kStiffnessStandard;
  double max_stress_ref = 0.0;  // metadata only, 0 when unknown

  double chord() const;
  double arc_length() const;

  /// Throws DomainError when any invariant is violated.
  void validate() const;
};

ArmDesign standard_arm();
ArmDesign cutout_arm();
ArmDesign ridges_arm();

struct RingConfiguration {
  ArmDesign arm;
  double hinge_separation = 2.0 * defaults::kArmRadius;
};

/// Open interval of admissible hinge separations, (0, 2c).
double max_separation(const ArmDesign& arm);

/// Separation that maximizes the enclosed area (c*sqrt(2); equals 2R for a quarter arc).
double area_maximizing_separation(const ArmDesign& arm);

double lateral_offset(const RingConfiguration& cfg);

/// Rhombus spanned by the four pins plus the four circular segments.
double enclosed_area(const RingConfiguration& cfg);

/// 4n points, counterclockwise, starting at the +x housing. Joints are not duplicated.
std::vector<Point> boundary_polyline(const RingConfiguration& cfg, int points_per_arc);

struct AxisExtents {
  double major = 0.0;  // half-extent along the screw axis
  double minor = 0.0;  // half-extent across it
};

AxisExtents axis_extents(const RingConfiguration& cfg, int points_per_arc);

/// Signed lead-screw travel added to d0. Throws RangeError if the result leaves (0, 2c).
double screw_to_separation(const ArmDesign& arm, double revolutions, double lead, double d0);

/// SVG path data ("M ... L ... Z") of the boundary, in metres.
std::string boundary_svg_path(const RingConfiguration& cfg, int points_per_arc);

}  // namespace ringbot::geometry
