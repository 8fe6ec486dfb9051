#pragma once

/**
 * @file scenario.hpp
 * @brief Experiment scenarios: each runs one module pipeline, writes CSV (and
 *        SVG when plotting is on) into the output directory and reports
 *        headline metrics with pass/fail checks against expected values.
 *
 * Exit codes: 0 all checks pass, 2 an expectation failed, 1 error.
 */

#include <filesystem>
#include <string>
#include <vector>

#include "ringbot/beam_mechanics.hpp"
#include "ringbot/config.hpp"

namespace ringbot::scenario {

struct Metric {
  std::string name;
  double value = 0.0;
  std::string unit;
};

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunReport {
  config::ScenarioId scenario = config::ScenarioId::FullDevice;
  std::vector<Metric> metrics;
  std::vector<Check> checks;
  std::vector<std::filesystem::path> artifacts;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 2; }
  const Metric* metric(const std::string& name) const;
  const Check* check(const std::string& name) const;
  std::string summary() const;
  std::string to_json() const;
};

RunReport run(const config::ScenarioConfig& cfg);

/// Reads a CSV with a header row naming force_N and deflection_m columns (any order, case-insensitive).
std::vector<beam::DeflectionSample> read_deflection_csv(const std::filesystem::path& path);

/// Fits EI to measured samples; writes stiffness_fit.csv and stiffness_fit_summary.csv
/// (plus stiffness_fit.svg when `plot`).
RunReport run_stiffness_fit(const std::vector<beam::DeflectionSample>& samples, double radius,
                            const std::filesystem::path& output_dir, bool plot);

}  // namespace ringbot::scenario
