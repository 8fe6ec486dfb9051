#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ringbot/beam_mechanics.hpp"
#include "ringbot/defaults.hpp"
#include "ringbot/errors.hpp"

using namespace ringbot;
using namespace ringbot::beam;

constexpr double kQuarter = std::numbers::pi / 2.0;

TEST_CASE("moment along the arm") {
  CHECK(moment_at(3.0, 0.7, 0.0, kQuarter) == 0.0);
  CHECK(moment_at(2.0, 0.05, kQuarter, kQuarter) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(moment_at(1.0, 0.1, std::numbers::pi / 6.0, kQuarter) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK_THROWS_AS(moment_at(1.0, 0.1, -0.1, kQuarter), DomainError);
  CHECK_THROWS_AS(moment_at(1.0, 0.1, kQuarter + 0.1, kQuarter), DomainError);
}

TEST_CASE("closed-form tip deflection") {
  CHECK(tip_deflection(0.01, 0.05, kQuarter, 1.0) == doctest::Approx(9.8175e-3).epsilon(1e-5));
  CHECK(tip_deflection(0.01, 0.05, kQuarter, 1.0) == doctest::Approx(0.009817477042468105).epsilon(1e-14));
  CHECK(tip_deflection(0.01, 0.05, std::numbers::pi, 1.0) == doctest::Approx(1.9635e-2).epsilon(1e-4));
  CHECK(tip_deflection(0.3, 2.0, 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(tip_deflection(0.0, 0.05, kQuarter, 1.0), DomainError);
  CHECK_THROWS_AS(tip_deflection(0.01, -0.05, kQuarter, 1.0), DomainError);
  CHECK_THROWS_AS(tip_deflection(0.01, 0.05, kQuarter, -1.0), DomainError);
}

TEST_CASE("closed form matches an independent Simpson quadrature of M/EI dM/dP R") {
  const double ei = 0.02, r = 0.08, p = 3.0;
  for (double phi : {0.3, 1.0, kQuarter, 2.5, std::numbers::pi}) {
    const double ref = oracle::simpson(
        [&](double th) { return (p * r * std::sin(th) / ei) * (r * std::sin(th)) * r; }, 0.0, phi, 2000);
    CHECK(oracle::rel(tip_deflection(ei, r, phi, p), ref) < 1e-12);
  }
}

TEST_CASE("trapezoidal tip deflection") {
  CHECK(oracle::rel(tip_deflection_numeric(0.01, 0.05, kQuarter, 1.0, 10000), 9.8175e-3) < 1e-5);
  CHECK(oracle::rel(tip_deflection_numeric(0.01, 0.05, kQuarter, 1.0, 10000), 0.009817477042468105) < 1e-6);
  CHECK(tip_deflection_numeric(0.01, 0.05, kQuarter, 0.0, 7) == 0.0);
  CHECK_THROWS_AS(tip_deflection_numeric(0.01, 0.05, kQuarter, 1.0, 1), DomainError);
}

TEST_CASE("trapezoidal rule converges at second order") {
  // At phi = pi/2 the integrand's end slopes coincide and the rule is exact, so
  // the order is measured at a generic angle.
  const double ei = 0.01, r = 0.05, p = 1.0, phi = 1.0;
  const double exact = tip_deflection(ei, r, phi, p);
  const double e1 = std::abs(tip_deflection_numeric(ei, r, phi, p, 1000) - exact);
  const double e2 = std::abs(tip_deflection_numeric(ei, r, phi, p, 2000) - exact);
  CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.01));
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("stiffness from a single load point") {
  CHECK(stiffness_from_point(1.0, 9.8175e-3, 0.05) == doctest::Approx(0.01).epsilon(1e-5));
  CHECK(stiffness_from_point(2.0, 2.0 * 9.8175e-3, 0.05) == doctest::Approx(stiffness_from_point(1.0, 9.8175e-3, 0.05)));
  CHECK_THROWS_AS(stiffness_from_point(1.0, 0.0, 0.05), DomainError);
  CHECK_THROWS_AS(stiffness_from_point(0.0, 1.0, 0.05), DomainError);
  CHECK_THROWS_AS(stiffness_from_point(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("fit recovers the measured arm stiffnesses from exact data") {
  const double r = 0.1;
  for (double ei : {defaults::kStiffnessStandard, defaults::kStiffnessCutout, defaults::kStiffnessRidges}) {
    std::vector<DeflectionSample> samples;
    for (double p : {1e-4, 2e-4, 3e-4, 4e-4}) samples.push_back({p, tip_deflection(ei, r, kQuarter, p)});
    const auto est = fit_stiffness(samples, r);
    CHECK(oracle::rel(est.bending_stiffness, ei) <= 1e-3);
    CHECK(est.std < 1e-12 * ei);
    CHECK(est.n_samples == 4);
  }
}

TEST_CASE("fit with one loaded sample reduces to the single-point formula") {
  const std::vector<DeflectionSample> samples{{0.0, 0.0}, {0.3, 0.02}};
  CHECK(fit_stiffness(samples, 0.07).bending_stiffness == doctest::Approx(stiffness_from_point(0.3, 0.02, 0.07)));
}

TEST_CASE("fit errors") {
  const std::vector<DeflectionSample> unloaded{{0.0, 0.0}, {0.0, 0.1}};
  CHECK_THROWS_AS(fit_stiffness(unloaded, 0.1), FitError);
  const std::vector<DeflectionSample> one{{1.0, 0.1}};
  CHECK_THROWS_AS(fit_stiffness(one, 0.1), FitError);
  const std::vector<DeflectionSample> flat{{1.0, 0.0}, {2.0, 0.0}};
  CHECK_THROWS_AS(fit_stiffness(flat, 0.1), FitError);
}

TEST_CASE("fit tolerates 2% multiplicative noise") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.02);
  const double ei = 3.2e-7, r = 0.1;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DeflectionSample> samples;
    for (double p : {1e-4, 2e-4, 3e-4, 4e-4})
      samples.push_back({p, tip_deflection(ei, r, kQuarter, p) * (1.0 + noise(rng))});
    const auto est = fit_stiffness(samples, r);
    CHECK(oracle::rel(est.bending_stiffness, ei) <= 0.05);
    CHECK(est.std > 0.0);
  }
}

// --- properties --------------------------------------------------------------

TEST_CASE("property: closed form and quadrature agree over random parameters") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double ei = 1e-7 + unit(rng);
    const double r = 0.01 + unit(rng);
    const double phi = 0.2 + unit(rng) * (std::numbers::pi - 0.2);
    const double p = 1e-3 + 10.0 * unit(rng);
    CHECK(oracle::rel(tip_deflection_numeric(ei, r, phi, p, 100000), tip_deflection(ei, r, phi, p)) <= 1e-8);
  }
}

TEST_CASE("property: round trip, linearity and cubic scaling") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double ei = 1e-8 + unit(rng);
    const double r = 0.01 + unit(rng);
    const double p = 1e-3 + 10.0 * unit(rng);
    const double q = tip_deflection(ei, r, kQuarter, p);
    CHECK(oracle::rel(stiffness_from_point(p, q, r), ei) <= 1e-12);
    // Power-of-two factors scale exactly in binary floating point.
    CHECK(tip_deflection(ei, r, kQuarter, 4.0 * p) == 4.0 * q);
    const double k = 0.5 + 3.0 * unit(rng);
    // Arbitrary k adds one rounding on each side plus the formula's own: a few ulp.
    CHECK(oracle::rel(tip_deflection(ei, r, kQuarter, k * p), k * q) <= 8.0 * 2.220446049250313e-16);
    CHECK(oracle::rel(tip_deflection(ei, 2.0 * r, kQuarter, p) / q, 8.0) <= 1e-12);
  }
}
