#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ringbot/errors.hpp"
#include "ringbot/geometry.hpp"

using namespace ringbot;
using namespace ringbot::geometry;

namespace {

RingConfiguration cfg_at(double d, double r = 0.1, double phi = std::numbers::pi / 2.0) {
  ArmDesign arm;
  arm.arc_radius = r;
  arm.arc_angle = phi;
  return {arm, d};
}

}  // namespace

TEST_CASE("chord and arc length of the default arm") {
  const ArmDesign arm;
  CHECK(arm.chord() == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(arm.arc_length() == doctest::Approx(0.1 * std::numbers::pi / 2.0));
  CHECK_NOTHROW(arm.validate());
}

TEST_CASE("arm invariants are enforced") {
  ArmDesign arm;
  arm.arc_angle = 3.5;
  CHECK_THROWS_AS(arm.validate(), DomainError);
  arm = ArmDesign{};
  arm.bending_stiffness = 0.0;
  CHECK_THROWS_AS(arm.validate(), DomainError);
  arm = ArmDesign{};
  arm.arc_radius = -1.0;
  CHECK_THROWS_AS(arm.validate(), DomainError);
}

TEST_CASE("lateral offset") {
  CHECK(lateral_offset(cfg_at(0.2)) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(lateral_offset(cfg_at(0.25)) == doctest::Approx(0.0661438).epsilon(1e-6));
  const double two_c = max_separation(cfg_at(0.2).arm);
  CHECK(two_c == doctest::Approx(0.2828427).epsilon(1e-6));
  CHECK(lateral_offset(cfg_at(two_c * (1.0 - 1e-12))) < 1e-6);
}

TEST_CASE("lateral offset rejects separations outside (0, 2c)") {
  const double two_c = max_separation(ArmDesign{});
  CHECK_THROWS_AS(lateral_offset(cfg_at(0.0)), DomainError);
  CHECK_THROWS_AS(lateral_offset(cfg_at(-0.01)), DomainError);
  CHECK_THROWS_AS(lateral_offset(cfg_at(two_c)), DomainError);
  CHECK_THROWS_AS(enclosed_area(cfg_at(0.3)), DomainError);
}

TEST_CASE("enclosed area at reference separations") {
  CHECK(enclosed_area(cfg_at(0.2)) == doctest::Approx(std::numbers::pi * 0.01).epsilon(1e-14));
  CHECK(enclosed_area(cfg_at(0.25)) == doctest::Approx(0.0279519).epsilon(1e-6));
  const double two_c = max_separation(ArmDesign{});
  CHECK(enclosed_area(cfg_at(two_c * (1.0 - 1e-13))) == doctest::Approx(0.0114159).epsilon(1e-5));
}

TEST_CASE("boundary polyline of the circle lies on the circle") {
  const auto pts = boundary_polyline(cfg_at(0.2), 4);
  REQUIRE(pts.size() == 16);
  for (const auto& p : pts) CHECK(std::hypot(p.x, p.y) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("boundary polyline has no duplicated joints and is counterclockwise") {
  for (double d : {0.05, 0.15, 0.2, 0.25, 0.28}) {
    const auto pts = boundary_polyline(cfg_at(d), 2);
    REQUIRE(pts.size() == 8);
    CHECK(oracle::shoelace(pts) > 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % pts.size()];
      CHECK(std::hypot(a.x - b.x, a.y - b.y) > 1e-6);
    }
  }
  CHECK_THROWS_AS(boundary_polyline(cfg_at(0.2), 1), DomainError);
}

TEST_CASE("boundary polyline starts at the +x housing and passes through every pin") {
  const auto cfg = cfg_at(0.25);
  const int n = 16;
  const auto pts = boundary_polyline(cfg, n);
  const double h = lateral_offset(cfg);
  CHECK(pts[0].x == doctest::Approx(0.125));
  CHECK(pts[0].y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pts[n].x == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(pts[n].y == doctest::Approx(h));
  CHECK(pts[2 * n].x == doctest::Approx(-0.125));
  CHECK(pts[3 * n].y == doctest::Approx(-h));
}

TEST_CASE("shoelace of the polyline matches the closed form") {
  const double shoelace = oracle::shoelace(boundary_polyline(cfg_at(0.25), 10000));
  CHECK(oracle::rel(shoelace, 0.0279519) < 1e-6);
  CHECK(oracle::rel(shoelace, enclosed_area(cfg_at(0.25))) < 1e-6);
}

TEST_CASE("axis extents") {
  const auto circle = axis_extents(cfg_at(0.2), 256);
  CHECK(circle.major == doctest::Approx(0.1).epsilon(1e-4));
  CHECK(circle.minor == doctest::Approx(0.1).epsilon(1e-4));

  // Frozen from a sampling oracle with 10^4 points per arc.
  const auto wide = axis_extents(cfg_at(0.25), 4096);
  CHECK(wide.major == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(wide.minor == doctest::Approx(0.0705719).epsilon(1e-5));
  CHECK(wide.major > wide.minor);

  const auto narrow = axis_extents(cfg_at(0.15), 4096);
  CHECK(narrow.major == doctest::Approx(0.0775521).epsilon(1e-5));
  CHECK(narrow.minor == doctest::Approx(0.1198958).epsilon(1e-5));
  CHECK(narrow.minor > narrow.major);

  CHECK_THROWS_AS(axis_extents(cfg_at(0.2), 63), DomainError);
}

TEST_CASE("screw travel") {
  const ArmDesign arm;
  const double lead = defaults::kScrewLead;
  CHECK(lead == doctest::Approx(2.11667e-3).epsilon(1e-5));
  CHECK(screw_to_separation(arm, 0.0, lead, 0.2) == 0.2);
  CHECK(screw_to_separation(arm, 10.0, 2.11667e-3, 0.2) == doctest::Approx(0.2211667).epsilon(1e-9));
  CHECK_THROWS_AS(screw_to_separation(arm, -95.0, 2.11667e-3, 0.2), RangeError);
  CHECK_THROWS_AS(screw_to_separation(arm, 100.0, 2.11667e-3, 0.2), RangeError);
}

TEST_CASE("svg path of the boundary") {
  const auto path = boundary_svg_path(cfg_at(0.2), 4);
  CHECK(path.rfind("M 0.100000 0.000000", 0) == 0);
  CHECK(path.back() == 'Z');
  CHECK(std::count(path.begin(), path.end(), 'L') == 15);
}

// --- properties --------------------------------------------------------------

TEST_CASE("property: circle closure for any radius") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(1e-3, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double r = radius(rng);
    const double area = enclosed_area(cfg_at(2.0 * r, r));
    CHECK(oracle::rel(area, std::numbers::pi * r * r) <= 1e-12);
  }
}

TEST_CASE("property: area is bounded by the circle and maximal at d = 2R") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> radius(0.01, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = radius(rng);
    const double two_c = max_separation(cfg_at(2 * r, r).arm);
    const double circle = std::numbers::pi * r * r;
    double best = -1.0;
    double best_d = 0.0;
    const int n = 2000;
    for (int i = 1; i <= n; ++i) {
      const double d = two_c * i / (n + 1);
      const double a = enclosed_area(cfg_at(d, r));
      CHECK(a <= circle * (1.0 + 1e-14));
      if (a > best) {
        best = a;
        best_d = d;
      }
    }
    CHECK(std::abs(best_d - 2.0 * r) <= two_c / (n + 1));
  }
}

TEST_CASE("property: shoelace oracle agrees with the closed form on random configurations") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.01 + unit(rng);
    const double phi = 0.2 + unit(rng) * (std::numbers::pi - 0.2);
    const auto base = cfg_at(1.0, r, phi);
    const double d = max_separation(base.arm) * (0.02 + 0.96 * unit(rng));
    const auto cfg = cfg_at(d, r, phi);
    const double exact = enclosed_area(cfg);
    CHECK(oracle::rel(oracle::shoelace(boundary_polyline(cfg, 10000)), exact) <= 1e-6);
  }
}

TEST_CASE("property: lateral offset strictly decreases with separation") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_c = max_separation(ArmDesign{});
  std::vector<double> ds(500);
  for (auto& d : ds) d = two_c * (1e-6 + unit(rng) * (1.0 - 2e-6));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (std::size_t i = 1; i < ds.size(); ++i) CHECK(lateral_offset(cfg_at(ds[i])) < lateral_offset(cfg_at(ds[i - 1])));
}
