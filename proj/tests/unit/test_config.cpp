#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "risplace/config.hpp"
#include "risplace/report.hpp"

using namespace risplace;
using namespace risplace::config;

namespace {

std::string csv_of(const ScenarioConfig& cfg) {
  std::ostringstream s;
  report::write_csv(s, cfg, report::run_sweep(cfg, 1, false), false);
  return s.str();
}

void check_error_mentions(const std::string& yaml, const std::string& needle) {
  try {
    parse_config(yaml);
    FAIL("expected ConfigError for: " << yaml);
  } catch (const ConfigError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
  }
}

const char* kFull = R"(radio:
  frequency_hz: 1.4e11
  tx_power_w: 2
  bandwidth_hz: 1e9
  noise_figure_db: 7
tx_antenna:
  diameter_m: 0.2
  efficiency: 0.6
rx_antenna:
  diameter_m: 0.05
ris:
  unit_width_m: 0.001
  unit_height_m: 0.002
  columns: 30
  rows: 20
  reflection: 0.8
geometry:
  tx_rx_horizontal_m: 40
  lateral_offset_m: 7
  tx_height_m: 5
  rx_height_m: 2
  ris_height_m: 10
sweep:
  variable: r1h
  from: 0
  to: 40
  steps: 9
model:
  mode: Exact
  small_ris_ratio: 0.1
  ru_cap: 1000
  exact: false
placement:
  domain: [1, 39]
  oracle_grid: 77
  oracle_mode: small
  refine_tol_m: 0.001
output:
  format: json
  path: out.json
)";

}  // namespace

TEST_CASE("an empty document gives the reference deployment") {
  const auto cfg = parse_config("");
  CHECK(cfg.radio.frequency_hz == 140e9);
  CHECK(cfg.radio.tx_power_w == 1.0);
  CHECK(cfg.radio.bandwidth_hz == 2e9);
  CHECK(cfg.radio.noise_figure_db == 10.0);
  CHECK(cfg.tx.diameter_m == 0.15);
  CHECK(cfg.tx.efficiency == 0.7);
  CHECK(cfg.ris.unit_width == doctest::Approx(cfg.radio.wavelength() / 2.0));
  CHECK(cfg.ris.area() == doctest::Approx(0.012).epsilon(0.01));
  CHECK(cfg.ris.reflection == 0.9);
  CHECK(cfg.geometry.ris_height == 12.0);
  CHECK(cfg.mode == linkbudget::Mode::Auto);
  CHECK_FALSE(cfg.sweep.has_value());
  CHECK(cfg.format == OutputFormat::Csv);
}

TEST_CASE("every field is read") {
  const auto cfg = parse_config(kFull);
  CHECK(cfg.radio.tx_power_w == 2.0);
  CHECK(cfg.radio.bandwidth_hz == 1e9);
  CHECK(cfg.radio.noise_figure_db == 7.0);
  CHECK(cfg.tx.diameter_m == 0.2);
  CHECK(cfg.tx.efficiency == 0.6);
  CHECK(cfg.rx.diameter_m == 0.05);
  CHECK(cfg.ris.unit_height == 0.002);
  CHECK(cfg.ris.columns == 30);
  CHECK(cfg.ris.rows == 20);
  CHECK(cfg.ris.reflection == 0.8);
  CHECK(cfg.geometry.tx_rx_horizontal == 40.0);
  CHECK(cfg.geometry.ris_height == 10.0);
  REQUIRE(cfg.sweep.has_value());
  CHECK(cfg.sweep->steps == 9);
  CHECK(cfg.mode == linkbudget::Mode::Exact);
  CHECK(cfg.small_ris_ratio == 0.1);
  CHECK(cfg.ru_cap == 1000);
  CHECK_FALSE(cfg.compute_exact);
  REQUIRE(cfg.domain.has_value());
  CHECK(cfg.domain->lo == 1.0);
  CHECK(cfg.domain->hi == 39.0);
  CHECK(cfg.oracle_grid == 77);
  CHECK(cfg.oracle_mode == linkbudget::Mode::Small);
  CHECK(cfg.refine_tol_m == 0.001);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK(cfg.output_path.value() == "out.json");
}

TEST_CASE("unknown names are rejected with the offending field") {
  check_error_mentions("radio:\n  frequency: 1\n", "frequency");
  check_error_mentions("radoi:\n  frequency_hz: 1\n", "radoi");
  check_error_mentions("geometry:\n  lateral_offset: 3\n", "geometry");
}

TEST_CASE("malformed values are rejected with the offending field") {
  check_error_mentions("radio:\n  frequency_hz: fast\n", "radio.frequency_hz");
  check_error_mentions("ris:\n  columns: 2.5\n  rows: 3\n", "ris.columns");
  check_error_mentions("model:\n  mode: medium\n", "model.mode");
  check_error_mentions("model:\n  exact: maybe\n", "model.exact");
  check_error_mentions("output:\n  format: xml\n", "output.format");
  check_error_mentions("placement:\n  domain: [5]\n", "placement.domain");
  check_error_mentions("sweep:\n  variable: height\n  from: 0\n  to: 1\n  steps: 3\n",
                       "sweep.variable");
  check_error_mentions("radio: [1, 2]\n", "radio");
  check_error_mentions("- a\n- b\n", "mapping");
  check_error_mentions("radio: {frequency_hz: 1\n", "YAML");
}

TEST_CASE("inconsistent sections are rejected") {
  check_error_mentions("ris:\n  area_m2: 0.1\n  columns: 3\n  rows: 3\n", "ris");
  check_error_mentions("ris:\n  columns: 3\n", "ris");
  check_error_mentions("sweep:\n  variable: r1h\n  from: 3\n  to: 3\n  steps: 3\n", "sweep");
  check_error_mentions("sweep:\n  variable: r1h\n  from: 0\n  to: 3\n  steps: 1\n", "sweep.steps");
  check_error_mentions("sweep:\n  variable: r1h\n  from: 0\n  to: 3\n", "sweep.steps");
  check_error_mentions("sweep:\n  variable: ys\n  from: 0\n  to: 3\n  steps: 4\n", "sweep.from");
  check_error_mentions("model:\n  small_ris_ratio: 1.5\n", "model.small_ris_ratio");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/scenario.yaml"), ConfigError);
}

TEST_CASE("sweep grid ends exactly on its bounds") {
  SweepSpec s{SweepVariable::TxRisHorizontal, 0.1, 0.7, 7};
  CHECK(s.at(0) == 0.1);
  CHECK(s.at(6) == 0.7);
  SweepSpec two{SweepVariable::LateralOffset, 1.0, 40.0, 2};
  CHECK(two.at(0) == 1.0);
  CHECK(two.at(1) == 40.0);
}

TEST_CASE("sweep values land in the right field") {
  auto cfg = parse_config("");
  cfg.sweep = SweepSpec{SweepVariable::LateralOffset, 1, 2, 2};
  CHECK(cfg.at_sweep_value(7.5).geometry.lateral_offset == 7.5);
  cfg.sweep = SweepSpec{SweepVariable::RxDiameter, 0.01, 0.02, 2};
  CHECK(cfg.at_sweep_value(0.015).rx.diameter_m == 0.015);
  cfg.sweep = SweepSpec{SweepVariable::TxRisHorizontal, 0, 2, 2};
  CHECK(cfg.at_sweep_value(1.25).geometry.tx_ris_horizontal == 1.25);
}

TEST_CASE("serialised configuration parses back to the same configuration") {
  const auto cfg = parse_config(kFull);
  const std::string once = serialize_config(cfg);
  const std::string twice = serialize_config(parse_config(once));
  CHECK(once == twice);
}

TEST_CASE("round-tripped configuration gives a byte-identical sweep") {
  const auto cfg = load_config(RISPLACE_SOURCE_DIR "/configs/small_ris_span30.yaml");
  const auto again = parse_config(serialize_config(cfg));
  CHECK(csv_of(cfg) == csv_of(again));
}

TEST_CASE("two sweep steps give exactly two rows at the bounds") {
  const auto cfg = parse_config(
      "geometry:\n  tx_rx_horizontal_m: 30\n  lateral_offset_m: 5\n"
      "sweep:\n  variable: r1h\n  from: 0\n  to: 30\n  steps: 2\n");
  const auto records = report::run_sweep(cfg, 1, false);
  REQUIRE(records.size() == 2);
  CHECK(records[0].value == 0.0);
  CHECK(records[1].value == 30.0);
  const std::string text = csv_of(cfg);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
