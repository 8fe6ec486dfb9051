#pragma once

// Measured and nominal constants of the ring device. Every default in the
// library and the scenario runner is read from here; module logic never
// hard-codes these numbers. Pressures are gauge Pa, volumes m^3, lengths m.

#include <numbers>

namespace ringbot::defaults {

// --- Ring arm geometry -----------------------------------------------------
// Arm radius is not a measured value; the arc is modelled as a quarter circle.
inline constexpr double kArmRadius = 0.1;
inline constexpr double kArmArcAngle = std::numbers::pi / 2.0;
inline constexpr double kArmThickness = 4.0e-3;       // standard and cutout arms
inline constexpr double kRidgeWebThickness = 1.5e-3;  // thin midsection of the ridge arm

// Bending stiffness identified for the three arm designs (N m^2) and the
// reported spread of each estimate.
inline constexpr double kStiffnessStandard = 8.9e-7;
inline constexpr double kStiffnessStandardSpread = 0.66e-7;
inline constexpr double kStiffnessCutout = 3.2e-7;
inline constexpr double kStiffnessCutoutSpread = 0.04e-7;
inline constexpr double kStiffnessRidges = 2.7e-7;
inline constexpr double kStiffnessRidgesSpread = 0.03e-7;

// --- Lead screw --------------------------------------------------------------
// 1/4"-12 thread: one revolution advances the nut by 25.4/12 mm.
inline constexpr double kScrewLead = 25.4e-3 / 12.0;
inline constexpr double kScrewSpeedRevPerSec = 2.0;

// --- Inflatable ring ---------------------------------------------------------
inline constexpr double kRingDeflatedVolume = 1788e-9;
inline constexpr double kRingReferenceVolume = 8350e-9;
inline constexpr double kRingReferencePressure = 4830.0;
inline constexpr double kRingMaxVolumeFactor = 1.1;
inline constexpr double kRingBurstPressure = 16550.0;
inline constexpr double kRingWallThickness = 0.101e-3;

// --- Airbag balloon ----------------------------------------------------------
inline constexpr double kBalloonDeflatedVolume = 13169e-9;
inline constexpr double kBalloonReferenceVolume = 1830508e-9;
inline constexpr double kBalloonReferencePressure = 4830.0;
inline constexpr double kBalloonMaxVolumeFactor = 1.2;  // tendon-limited extension
inline constexpr double kBalloonBurstPressure = 18620.0;
inline constexpr double kBalloonWallThickness = 0.076e-3;

// --- Contact -----------------------------------------------------------------
inline constexpr double kAtmosphericPressure = 101325.0;  // absolute Pa

// --- Casualty simulation -----------------------------------------------------
inline constexpr double kBleedOnsetNoDevice = 4830.0;     // pump pressure, no device
inline constexpr double kBalloonHoldPressure = 8270.0;    // balloon inflation during test
inline constexpr double kBleedOnsetWithDevice = 8960.0;   // pump pressure, device applied

// --- Controller --------------------------------------------------------------
// Balloon pressure above which the motor cannot reshape the ring. The stall
// point was never measured; this is a placeholder.
inline constexpr double kTorquePressureLimit = 1000.0;
inline constexpr double kHoldingTolerance = 50.0;
inline constexpr double kSetpointSafetyMargin = 1000.0;
inline constexpr double kRegulatorTimeConstant = 0.5;
inline constexpr double kRegulatorMaxRate = 5000.0;

}  // namespace ringbot::defaults
