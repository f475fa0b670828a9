#pragma once

// Street-level link geometry, the elliptic beam footprint on the surface
// plane and the grid of reflection units it illuminates.
//
// Frame: TX at (0, 0, h_t), RX at (r_h, 0, h_r), surface centre at
// (r_1h, y_s, h_s). The surface is the vertical plane y = y_s; its normal
// points back towards the street (-y). Reflection units are laid on a
// horizontal (x) by vertical (z) grid centred on the surface centre.

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "risplace/antenna.hpp"

namespace risplace::geometry {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

struct LinkGeometry {
  double tx_rx_horizontal = 20.0;   // r_h
  double tx_ris_horizontal = 0.0;   // r_1h, may exceed r_h
  double lateral_offset = 10.0;     // y_s
  double tx_height = 6.0;
  double rx_height = 3.0;
  double ris_height = 12.0;

  void validate() const;

  [[nodiscard]] Vec3 tx_position() const { return {0.0, 0.0, tx_height}; }
  [[nodiscard]] Vec3 rx_position() const { return {tx_rx_horizontal, 0.0, rx_height}; }
  [[nodiscard]] Vec3 ris_center() const { return {tx_ris_horizontal, lateral_offset, ris_height}; }

  /// Copy with the surface moved to horizontal position r_1h.
  [[nodiscard]] LinkGeometry placed_at(double r1h) const;

  /// TX and RX exchange roles: heights swap and r_1h becomes r_h - r_1h.
  [[nodiscard]] LinkGeometry mirrored() const;
};

struct LinkVectors {
  double r1 = 0.0;       // TX to surface centre
  double r2 = 0.0;       // surface centre to RX
  double theta_i = 0.0;  // incidence angle from the surface normal
  double theta_r = 0.0;  // departure angle from the surface normal
};

LinkVectors link_vectors(const LinkGeometry& g);

struct RisSpec {
  double unit_width = 0.0;   // d_x, metres
  double unit_height = 0.0;  // d_y, metres
  int columns = 1;           // N_x
  int rows = 1;              // N_y
  double reflection = 0.9;   // amplitude reflection coefficient

  void validate() const;
  [[nodiscard]] double area() const { return columns * unit_width * rows * unit_height; }
  [[nodiscard]] std::size_t unit_count() const {
    return static_cast<std::size_t>(columns) * static_cast<std::size_t>(rows);
  }

  /// Square surface of `unit`-sized cells whose area is closest to `area`.
  static RisSpec square(double area, double unit, double reflection = 0.9);
};

/// Point on the surface plane: x horizontal, z vertical.
struct PlanePoint {
  double x = 0.0;
  double z = 0.0;
};

struct FootprintEllipse {
  double alpha = 0.0;         // semi-axis along the plane of incidence
  double beta = 0.0;          // transverse semi-axis
  double eccentricity = 0.0;
  double area = 0.0;          // pi alpha beta
  double beamwidth = 0.0;     // full cone angle that produced it
  PlanePoint center;          // on the surface plane
  PlanePoint major_axis{1.0, 0.0};  // unit vector in the plane

  [[nodiscard]] bool contains(PlanePoint p) const;
};

/// Law-of-sines footprint of a cone of full angle `beamwidth` whose axis hits
/// the plane at distance r1 under incidence theta_i. Centred at the origin.
/// Throws FootprintUnboundedError when theta_i + beamwidth / 2 >= pi / 2.
FootprintEllipse footprint(double r1, double theta_i, double beamwidth);

/// Footprint of the TX beam for this geometry, centred on the surface centre
/// and oriented along the projection of the TX ray onto the plane.
FootprintEllipse footprint(const LinkGeometry& g, double beamwidth);

enum class Regime { SmallRis, Intermediate, LargeRis };

std::string_view to_string(Regime r);

/// S_s / S_i at or below this counts as "surface much smaller than footprint".
inline constexpr double kDefaultSmallRisRatio = 0.2;

struct EffectiveArea {
  double area = 0.0;
  Regime regime = Regime::Intermediate;
};

/// min(S_i, S_s) together with the regime tag.
EffectiveArea effective_area(double footprint_area, double ris_area,
                             double small_ris_ratio = kDefaultSmallRisRatio);

struct RuSample {
  int column = 0;
  int row = 0;
  Vec3 position;
  double r1n = 0.0;
  double r2n = 0.0;
  double theta_in = 0.0;
  double theta_rn = 0.0;
  double tx_gain = 0.0;
  double rx_gain = 0.0;
  double phase = 0.0;  // co-phasing shift -2 pi (r1n + r2n) / lambda, wrapped to [0, 2 pi)
};

/// Co-phasing shift -2 pi (r1 + r2) / lambda reduced to [0, 2 pi). The
/// reduction is done in cycles so the large unreduced angle is never formed.
double cophasing_phase(double r1, double r2, double wavelength);

/// Contiguous run [first_column, end_column) of active units in one grid row.
struct RowSpan {
  int row = 0;
  int first_column = 0;
  int end_column = 0;
};

/// Set of reflection units whose centres lie inside both the surface and the
/// TX first-null footprint. Rows are stored in ascending order, so iterating
/// rows() then columns gives the canonical row-major order.
class IlluminatedRegion {
 public:
  IlluminatedRegion(const LinkGeometry& g, const RisSpec& ris, const antenna::RadioConfig& cfg,
                    const antenna::AntennaSpec& tx, const antenna::AntennaSpec& rx);

  [[nodiscard]] std::span<const RowSpan> rows() const { return rows_; }
  [[nodiscard]] std::size_t count() const { return count_; }
  [[nodiscard]] const FootprintEllipse& footprint() const { return footprint_; }

  /// Full per-unit record for grid cell (column, row).
  [[nodiscard]] RuSample sample(int column, int row) const;

  /// sqrt(G_t G_r G_s(theta_i) G_s(theta_r)) / (r1n r2n) for cell (column, row).
  [[nodiscard]] double amplitude(int column, int row) const;

  /// Unit-centre position for cell (column, row).
  [[nodiscard]] Vec3 position(int column, int row) const;

  [[nodiscard]] const LinkGeometry& link() const { return geometry_; }
  [[nodiscard]] double wavelength() const { return wavelength_; }

 private:
  [[nodiscard]] bool inside(int column, int row) const;

  LinkGeometry geometry_;
  RisSpec ris_;
  antenna::AntennaSpec tx_antenna_;
  antenna::AntennaSpec rx_antenna_;
  double wavelength_ = 0.0;
  double tx_max_gain_ = 0.0;
  double rx_max_gain_ = 0.0;
  Vec3 tx_;
  Vec3 rx_;
  Vec3 center_;
  Vec3 tx_boresight_;
  Vec3 rx_boresight_;
  FootprintEllipse footprint_;
  std::vector<RowSpan> rows_;
  std::size_t count_ = 0;
};

/// Materialised list of illuminated units in row-major order.
/// Throws EmptyIlluminationError when none is active.
std::vector<RuSample> enumerate_rus(const LinkGeometry& g, const RisSpec& ris,
                                    const antenna::RadioConfig& cfg,
                                    const antenna::AntennaSpec& tx,
                                    const antenna::AntennaSpec& rx);

/// Spread of per-unit quantities over the illuminated region relative to
/// the surface-centre values.
struct RegionSpread {
  double rx_gain_max_over_min = 0.0;
  double r1_over_max_r1n = 0.0;
  double r2_over_max_r2n = 0.0;
  double max_incidence_gain_ratio = 0.0;  // max G_s(theta_in) / G_s(theta_i)
  double max_departure_gain_ratio = 0.0;  // max G_s(theta_rn) / G_s(theta_r)
};

RegionSpread region_spread(const IlluminatedRegion& region);

}  // namespace risplace::geometry
