#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ringbot/errors.hpp"
#include "ringbot/plot.hpp"
#include "ringbot/scenario.hpp"

using namespace ringbot;
using namespace ringbot::config;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ringbot_test_scenario" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ScenarioConfig make(ScenarioId id, const std::string& dir) {
  auto cfg = default_config(id);
  cfg.output_dir = scratch(dir);
  cfg.plot = true;
  return cfg;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("plot with one two-point series has one polyline") {
  const std::vector<plot::Series> s{{"line", {0.0, 1.0}, {0.0, 2.0}, false}};
  const auto svg = plot::render_svg(s, {"t", "x", "y", false});
  CHECK(count(svg, "<polyline") == 1);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg == plot::render_svg(s, {"t", "x", "y", false}));
}

TEST_CASE("plot errors") {
  CHECK_THROWS_AS(plot::render_svg({}, {}), DomainError);
  const std::vector<plot::Series> empty{{"e", {}, {}, false}};
  CHECK_THROWS_AS(plot::render_svg(empty, {}), DomainError);
  const std::vector<plot::Series> ragged{{"r", {1.0, 2.0}, {1.0}, false}};
  CHECK_THROWS_AS(plot::render_svg(ragged, {}), DomainError);
  const std::vector<plot::Series> ok{{"ok", {1.0}, {1.0}, false}};
  CHECK_THROWS_AS(plot::emit_plot(ok, {}, "/nonexistent-dir/x.svg"), IOError);
}

TEST_CASE("plot escapes labels") {
  const std::vector<plot::Series> s{{"a<b & c", {0.0, 1.0}, {0.0, 1.0}, false}};
  const auto svg = plot::render_svg(s, {"\"q\"", "x", "y", false});
  CHECK(svg.find("a&lt;b &amp; c") != std::string::npos);
  CHECK(svg.find("&quot;q&quot;") != std::string::npos);
}

TEST_CASE("stiffness scenario recovers the configured stiffness") {
  const auto r = scenario::run(make(ScenarioId::Stiffness, "stiffness"));
  CHECK(r.passed());
  CHECK(r.exit_code() == 0);
  for (auto [name, ei] : {std::pair{"standard", 8.9e-7}, {"cutout", 3.2e-7}, {"ridges", 2.7e-7}}) {
    const auto* m = r.metric(std::string(name) + ".fitted_ei");
    REQUIRE(m);
    CHECK(std::abs(m->value - ei) / ei <= 1e-3);
  }
  CHECK(r.artifacts.size() == 2);
}

TEST_CASE("geometry scenario") {
  const auto cfg = make(ScenarioId::Geometry, "geometry");
  const auto r = scenario::run(cfg);
  CHECK(r.passed());
  const auto csv = slurp(cfg.output_dir / "geometry.csv");
  CHECK(csv.rfind("d_m,h_m,area_m2,major_m,minor_m\n", 0) == 0);
  CHECK(count(csv, "\n") == 1001);
}

TEST_CASE("burst scenario") {
  const auto cfg = make(ScenarioId::Burst, "burst");
  const auto r = scenario::run(cfg);
  CHECK(r.passed());
  REQUIRE(r.metric("ring.burst_pressure"));
  CHECK(std::abs(r.metric("ring.burst_pressure")->value - 16550.0) <= 10.0);
  CHECK(std::abs(r.metric("balloon.burst_pressure")->value - 18620.0) <= 10.0);
  const auto csv = slurp(cfg.output_dir / "burst_ring.csv");
  CHECK(csv.rfind("t_s,pressure_pa,volume_m3,burst\n", 0) == 0);
  CHECK(count(csv, ",1\n") == 1);
}

TEST_CASE("burst expectation mismatch gives exit code 2") {
  auto cfg = make(ScenarioId::Burst, "burst_mismatch");
  cfg.expect.ring_burst = 15000.0;
  const auto r = scenario::run(cfg);
  CHECK_FALSE(r.passed());
  CHECK(r.exit_code() == 2);
}

TEST_CASE("contact scenario in plate and ring modes") {
  const auto plate_cfg = make(ScenarioId::Contact, "contact_plate");
  const auto plate = scenario::run(plate_cfg);
  CHECK(plate.passed());
  CHECK(plate.metric("force_at_hold_pressure")->value == doctest::Approx(82.7));

  // Sweep polyline must be increasing.
  const auto svg = slurp(plate_cfg.output_dir / "contact.svg");
  const std::regex points_re("<polyline points=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, points_re));
  std::istringstream pts(m[1].str());
  std::string pair;
  double prev_x = -1e9, prev_y = 1e9;
  while (pts >> pair) {
    const auto comma = pair.find(',');
    const double x = std::stod(pair.substr(0, comma));
    const double y = std::stod(pair.substr(comma + 1));
    CHECK(x > prev_x);
    CHECK(y <= prev_y);  // SVG y grows downward
    prev_x = x;
    prev_y = y;
  }

  auto ring_cfg = make(ScenarioId::Contact, "contact_ring");
  ring_cfg.contact.mode = "ring";
  ring_cfg.contact.footprint_area = 0.02;
  ring_cfg.contact.blend = 0.5;
  const auto ring = scenario::run(ring_cfg);
  CHECK(ring.passed());
  CHECK(ring.metric("naive_to_footprint_force_ratio")->value ==
        doctest::Approx(ring.metric("ring_area")->value / 0.02).epsilon(1e-15));
  CHECK(count(slurp(ring_cfg.output_dir / "contact.svg"), "<polyline") == 3);
}

TEST_CASE("bleed scenario") {
  const auto cfg = make(ScenarioId::Bleed, "bleed");
  const auto r = scenario::run(cfg);
  CHECK(r.passed());
  CHECK(std::abs(r.metric("flip_point")->value - 8960.0) <= 1.0);
  CHECK(std::abs(r.metric("flip_point_no_device")->value - 4830.0) <= 1.0);
  CHECK(r.metric("threshold_ratio")->value == doctest::Approx(1.855).epsilon(1e-3));
  CHECK(slurp(cfg.output_dir / "bleed.csv").rfind("pump_pa,bleeding\n", 0) == 0);
}

TEST_CASE("full device scenario ends holding with bleeding suppressed") {
  const auto cfg = make(ScenarioId::FullDevice, "full_device");
  const auto r = scenario::run(cfg);
  CHECK(r.passed());
  CHECK(r.metric("bleeding")->value == 0.0);
  CHECK(r.check("final_phase_Holding")->pass);
  const auto csv = slurp(cfg.output_dir / "device.csv");
  CHECK(csv.rfind("t_s,phase,d_m,balloon_pa,ring_pa,events\n", 0) == 0);
  CHECK(csv.find("SetpointReached") != std::string::npos);
}

TEST_CASE("full device with inflate-then-reshape reports the rejection") {
  auto cfg = make(ScenarioId::FullDevice, "full_device_bad_order");
  cfg.device.script = {{0.0, controller::InflateTo{8270.0}}, {6.0, controller::Reshape{0.22}}};
  const auto r = scenario::run(cfg);
  CHECK(r.metric("rejected_commands")->value == 1.0);
  CHECK(r.metric("final_separation")->value == 0.2);
}

TEST_CASE("report json") {
  const auto r = scenario::run(make(ScenarioId::Bleed, "bleed_json"));
  const auto json = r.to_json();
  CHECK(json.find("\"scenario\": \"bleed\"") != std::string::npos);
  CHECK(json.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("deflection csv reader and stiffness-fit") {
  const auto dir = scratch("fit");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "in.csv");
    out << "Deflection_m, Force_N\n0.5, 1\n1.0, 2\n\n";
  }
  const auto samples = scenario::read_deflection_csv(dir / "in.csv");
  REQUIRE(samples.size() == 2);
  CHECK(samples[1].force == 2.0);
  CHECK(samples[1].deflection == 1.0);

  const auto r = scenario::run_stiffness_fit(samples, 0.1, dir / "out", false);
  CHECK(r.metric("bending_stiffness")->value == doctest::Approx(std::numbers::pi / 4.0 * 1e-3 / 0.5));
  CHECK(slurp(dir / "out" / "stiffness_fit_summary.csv").rfind("bending_stiffness_nm2,std_nm2,n_samples\n", 0) == 0);

  {
    std::ofstream out(dir / "bad.csv");
    out << "force_N,deflection_m\n1,abc\n";
  }
  CHECK_THROWS_AS(scenario::read_deflection_csv(dir / "bad.csv"), ParseError);
  {
    std::ofstream out(dir / "noheader.csv");
    out << "a,b\n1,2\n";
  }
  CHECK_THROWS_AS(scenario::read_deflection_csv(dir / "noheader.csv"), ParseError);
}

TEST_CASE("invalid config is rejected before running") {
  auto cfg = make(ScenarioId::Contact, "invalid");
  cfg.contact.mode = "ring";
  CHECK_THROWS_AS(scenario::run(cfg), ValidationError);
}
