#pragma once

// Optimal horizontal position of the surface along the street: the cubic
// stationarity condition for a small surface, the quadratic one for a large
// surface, and a brute-force oracle over any SNR model.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risplace/antenna.hpp"
#include "risplace/geometry.hpp"
#include "risplace/linkbudget.hpp"
#include "risplace/numerics.hpp"

namespace risplace::placement {

struct CubicCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  [[nodiscard]] double operator()(double x) const { return ((a * x + b) * x + c) * x + d; }
  [[nodiscard]] double discriminant() const;
};

/// Stationarity cubic of the small-surface SNR in r_1h. The r_1h field of g
/// is ignored.
CubicCoefficients small_ris_cubic(const geometry::LinkGeometry& g);

/// Closed interval of admissible r_1h.
struct Domain {
  double lo = 0.0;
  double hi = 0.0;

  void validate() const;
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

/// [0, 2 r_h].
Domain default_domain(const geometry::LinkGeometry& g);

enum class Stationary { LocalMax, LocalMin, Flat };

std::string_view to_string(Stationary s);

struct StationaryPoint {
  double r1h = 0.0;
  Stationary kind = Stationary::Flat;
  double snr_db = 0.0;
  bool in_domain = false;
};

struct PlacementSolution {
  double r1h = 0.0;
  double snr_db = 0.0;
  std::vector<StationaryPoint> stationary;  // ascending r1h
  std::optional<double> discriminant;       // small-surface cubic only
  geometry::Regime regime = geometry::Regime::SmallRis;  // regime the solver assumes
  bool endpoint_optimum = false;
  bool regime_violation = false;  // surface-to-footprint ratio at r1h breaks the assumption
  double area_ratio = 0.0;        // S_s / S_i at r1h
};

/// Small-surface SNR in dB at r_1h.
double small_ris_snr_db(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                        const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                        const antenna::AntennaSpec& rx, double r1h);

/// Large-surface SNR in dB at r_1h, with the full (unapproximated) closed form.
double large_ris_snr_db(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                        const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                        const antenna::AntennaSpec& rx, double r1h);

/// The part of the large-surface SNR that depends on r_1h once
/// cos(phi_HPBW / 2 + theta_i) ~ cos(theta_i): 30 log10(r1 / r2).
double large_ris_objective_db(const geometry::LinkGeometry& g, double r1h);

/// Roots of the cubic, classified and ranked by small-surface SNR together
/// with the domain endpoints. Ties within 1e-9 dB go to the smaller r_1h.
PlacementSolution solve_small(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                              const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                              const antenna::AntennaSpec& rx, std::optional<Domain> domain = {},
                              double small_ris_ratio = geometry::kDefaultSmallRisRatio);

/// Larger root of r_h r^2 + ((h_s-h_t)^2 - r_h^2 - (h_s-h_r)^2) r - r_h (y_s^2 + (h_s-h_t)^2).
double solve_large(const geometry::LinkGeometry& g);

/// Both quadratic roots.
std::vector<double> large_ris_roots(const geometry::LinkGeometry& g);

/// solve_large inside a domain, with the solution record filled in.
PlacementSolution solve_large_placement(const geometry::LinkGeometry& g,
                                        const geometry::RisSpec& ris,
                                        const antenna::RadioConfig& cfg,
                                        const antenna::AntennaSpec& tx,
                                        const antenna::AntennaSpec& rx,
                                        std::optional<Domain> domain = {});

struct NumericOptions {
  int grid = 500;
  double refine_tol = 1e-6;  // metres
  unsigned threads = 1;      // used by the exact sum
};

/// Grid scan plus golden refinement of an arbitrary SNR(r_1h) in dB. Points
/// whose evaluation throws a library error count as -inf.
numerics::Maximum solve_numeric(const std::function<double(double)>& snr_db,
                                const Domain& domain, const NumericOptions& options = {});

/// Oracle over one of the link-budget models (Auto is not accepted).
numerics::Maximum solve_numeric(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                                const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                                const antenna::AntennaSpec& rx, linkbudget::Mode mode,
                                std::optional<Domain> domain = {},
                                const NumericOptions& options = {});

struct DiscriminantPoint {
  double lateral_offset = 0.0;
  double discriminant = 0.0;
};

std::vector<DiscriminantPoint> discriminant_sweep(const geometry::LinkGeometry& g,
                                                  std::span<const double> lateral_offsets);

}  // namespace risplace::placement
