#pragma once

// Received power through the surface: the exact co-phased per-unit sum, the
// closed forms for a surface smaller and larger than the beam footprint, and
// end-to-end SNR.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risplace/antenna.hpp"
#include "risplace/geometry.hpp"

namespace risplace::linkbudget {

enum class Mode { Exact, Small, Large, Auto };

std::string_view to_string(Mode m);
/// Case-insensitive; throws ArgumentError for anything but exact/small/large/auto.
Mode parse_mode(std::string_view text);

/// (lambda / 4 pi)^4 P_t Gamma^2, common to every path.
double power_scale(const antenna::RadioConfig& cfg, const geometry::RisSpec& ris);

/// Co-phased sum over explicit samples, accumulated in sample order.
double exact_received_power(std::span<const geometry::RuSample> samples,
                            const antenna::RadioConfig& cfg, const geometry::RisSpec& ris);

/// Co-phased sum over an illuminated region. Each grid row is one chunk with
/// its own compensated sum; chunks are combined in row order, so the result
/// does not depend on `threads` (0 = hardware concurrency).
double exact_received_power(const geometry::IlluminatedRegion& region,
                            const antenna::RadioConfig& cfg, const geometry::RisSpec& ris,
                            unsigned threads = 1);

/// Coherent sum with arbitrary phase shifts theta_n.
double phased_received_power(std::span<const geometry::RuSample> samples,
                             std::span<const double> phases, const antenna::RadioConfig& cfg,
                             const geometry::RisSpec& ris);

/// Closed form with the full surface area and boresight gains.
double small_ris_power(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                       const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                       const antenna::AntennaSpec& rx);

struct LargeRisForms {
  double footprint_form = 0.0;  // written with S_HPBW
  double expanded_form = 0.0;   // S_HPBW substituted in terms of angles and r1 / r2
};

LargeRisForms large_ris_forms(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                              const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                              const antenna::AntennaSpec& rx);

/// Closed form with the half-power footprint S_HPBW in place of the surface.
double large_ris_power(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                       const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                       const antenna::AntennaSpec& rx);

struct Snr {
  double linear = 0.0;
  double db = 0.0;
};

Snr snr(double received_power_w, const antenna::RadioConfig& cfg);

inline constexpr std::size_t kDefaultRuCap = 5'000'000;

struct EvaluateOptions {
  Mode mode = Mode::Auto;
  double small_ris_ratio = geometry::kDefaultSmallRisRatio;
  std::size_t ru_cap = kDefaultRuCap;
  unsigned threads = 1;
  bool compute_exact = true;  // carry the exact sum alongside closed forms when under the cap
};

struct LinkBudgetResult {
  double received_power_w = 0.0;
  Snr snr;
  std::size_t active_units = 0;
  geometry::Regime regime = geometry::Regime::Intermediate;
  Mode path = Mode::Exact;  // which model produced received_power_w
  geometry::LinkVectors vectors;
  double footprint_area = 0.0;   // S_i
  double effective_area = 0.0;   // S
  std::optional<double> exact_w;
  std::optional<double> small_w;
  std::optional<double> large_w;
  std::optional<double> closed_w;  // the closed form matching the regime or forced mode
  std::vector<std::string> warnings;
};

LinkBudgetResult evaluate(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                          const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                          const antenna::AntennaSpec& rx, const EvaluateOptions& options = {});

}  // namespace risplace::linkbudget
