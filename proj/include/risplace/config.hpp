#pragma once

// Scenario files: a YAML document with one section per model component.
// Omitted fields take the reference deployment defaults (140 GHz, 1 W,
// 2 GHz bandwidth, 10 dB noise figure, 15 cm / 0.7 TX dish, half-wave units,
// 12 m surface height, reflection 0.9).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "risplace/antenna.hpp"
#include "risplace/errors.hpp"
#include "risplace/geometry.hpp"
#include "risplace/linkbudget.hpp"
#include "risplace/placement.hpp"

namespace risplace::config {

/// Malformed or inconsistent scenario; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class SweepVariable { TxRisHorizontal, LateralOffset, RxDiameter };

std::string_view to_string(SweepVariable v);  // "r1h", "ys", "Dr"

struct SweepSpec {
  SweepVariable variable = SweepVariable::TxRisHorizontal;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;

  /// Value of grid point k; the last point is exactly `to`.
  [[nodiscard]] double at(int k) const;
};

enum class OutputFormat { Csv, Json };

struct ScenarioConfig {
  antenna::RadioConfig radio;
  antenna::AntennaSpec tx;
  antenna::AntennaSpec rx{0.03, 0.7};
  geometry::RisSpec ris;
  geometry::LinkGeometry geometry;
  bool has_tx_ris_horizontal = false;
  std::optional<SweepSpec> sweep;

  linkbudget::Mode mode = linkbudget::Mode::Auto;
  double small_ris_ratio = geometry::kDefaultSmallRisRatio;
  std::size_t ru_cap = linkbudget::kDefaultRuCap;
  bool compute_exact = true;

  std::optional<placement::Domain> domain;
  int oracle_grid = 500;
  linkbudget::Mode oracle_mode = linkbudget::Mode::Exact;
  double refine_tol_m = 1e-6;

  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> output_path;

  /// Geometry and antennas for one sweep value.
  [[nodiscard]] ScenarioConfig at_sweep_value(double value) const;
  [[nodiscard]] linkbudget::EvaluateOptions evaluate_options(unsigned threads) const;
};

ScenarioConfig parse_config(std::string_view yaml_text);
ScenarioConfig load_config(const std::string& path);

/// Every resolved field, 17 significant digits. Parsing the result gives back
/// an identical configuration.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace risplace::config
