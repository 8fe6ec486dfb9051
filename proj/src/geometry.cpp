#include "ringbot/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "ringbot/errors.hpp"

namespace ringbot::geometry {

double ArmDesign::chord() const { return 2.0 * arc_radius * std::sin(arc_angle / 2.0); }

double ArmDesign::arc_length() const { return arc_radius * arc_angle; }

void ArmDesign::validate() const {
  if (!(arc_radius > 0.0)) throw DomainError(fmt::format("arm '{}': arc radius must be > 0", name));
  if (!(arc_angle > 0.0 && arc_angle <= std::numbers::pi))
    throw DomainError(fmt::format("arm '{}': arc angle must lie in (0, pi]", name));
  if (!(bending_stiffness > 0.0)) throw DomainError(fmt::format("arm '{}': EI must be > 0", name));
  if (!(thickness > 0.0)) throw DomainError(fmt::format("arm '{}': thickness must be > 0", name));
}

ArmDesign standard_arm() { return ArmDesign{}; }

ArmDesign cutout_arm() {
  ArmDesign arm;
  arm.name = "cutout";
  arm.bending_stiffness = defaults::kStiffnessCutout;
  return arm;
}

ArmDesign ridges_arm() {
  ArmDesign arm;
  arm.name = "ridges";
  arm.web_thickness = defaults::kRidgeWebThickness;
  arm.bending_stiffness = defaults::kStiffnessRidges;
  return arm;
}

double max_separation(const ArmDesign& arm) { return 2.0 * arm.chord(); }

double area_maximizing_separation(const ArmDesign& arm) { return std::sqrt(2.0) * arm.chord(); }

namespace {

void check(const RingConfiguration& cfg) {
  cfg.arm.validate();
  const double d = cfg.hinge_separation;
  if (!(d > 0.0) || !(d < max_separation(cfg.arm)))
    throw DomainError(fmt::format("hinge separation {} m outside (0, {}) m", d, max_separation(cfg.arm)));
}

}  // namespace

double lateral_offset(const RingConfiguration& cfg) {
  check(cfg);
  const double c = cfg.arm.chord();
  const double half_d = cfg.hinge_separation / 2.0;
  return std::sqrt(std::max(0.0, c * c - half_d * half_d));
}

double enclosed_area(const RingConfiguration& cfg) {
  const double h = lateral_offset(cfg);
  const double r = cfg.arm.arc_radius;
  const double phi = cfg.arm.arc_angle;
  const double segment = 0.5 * r * r * (phi - std::sin(phi));
  return cfg.hinge_separation * h + 4.0 * segment;
}

std::vector<Point> boundary_polyline(const RingConfiguration& cfg, int points_per_arc) {
  if (points_per_arc < 2) throw DomainError("boundary_polyline needs at least 2 points per arc");
  const double h = lateral_offset(cfg);
  const double r = cfg.arm.arc_radius;
  const double phi = cfg.arm.arc_angle;
  const double c = cfg.arm.chord();
  const double half_d = cfg.hinge_separation / 2.0;
  const double apothem = r * std::cos(phi / 2.0);

  const std::array<Point, 4> pins{{{half_d, 0.0}, {0.0, h}, {-half_d, 0.0}, {0.0, -h}}};

  std::vector<Point> pts;
  pts.reserve(4 * static_cast<std::size_t>(points_per_arc));
  for (std::size_t i = 0; i < pins.size(); ++i) {
    const Point a = pins[i];
    const Point b = pins[(i + 1) % pins.size()];
    const double ux = (b.x - a.x) / c;
    const double uy = (b.y - a.y) / c;
    // Traversal is counterclockwise, so the outward normal is the right-hand normal.
    const double cx = 0.5 * (a.x + b.x) - uy * apothem;
    const double cy = 0.5 * (a.y + b.y) + ux * apothem;
    const double start = std::atan2(a.y - cy, a.x - cx);
    for (int k = 0; k < points_per_arc; ++k) {
      const double t = start + phi * static_cast<double>(k) / points_per_arc;
      pts.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
    }
  }
  return pts;
}

AxisExtents axis_extents(const RingConfiguration& cfg, int points_per_arc) {
  if (points_per_arc < 64) throw DomainError("axis_extents needs at least 64 points per arc");
  AxisExtents ext;
  for (const auto& p : boundary_polyline(cfg, points_per_arc)) {
    ext.major = std::max(ext.major, std::abs(p.x));
    ext.minor = std::max(ext.minor, std::abs(p.y));
  }
  return ext;
}

double screw_to_separation(const ArmDesign& arm, double revolutions, double lead, double d0) {
  const double d = d0 + revolutions * lead;
  if (!(d > 0.0) || !(d < max_separation(arm)))
    throw RangeError(fmt::format("screw travel gives d = {} m, outside (0, {}) m", d, max_separation(arm)));
  return d;
}

std::string boundary_svg_path(const RingConfiguration& cfg, int points_per_arc) {
  const auto pts = boundary_polyline(cfg, points_per_arc);
  std::string path;
  for (std::size_t i = 0; i < pts.size(); ++i)
    path += fmt::format("{}{:.6f} {:.6f} ", i == 0 ? "M " : "L ", pts[i].x, pts[i].y);
  path += "Z";
  return path;
}

}  // namespace ringbot::geometry
