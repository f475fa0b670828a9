#include "risplace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "risplace/errors.hpp"

namespace risplace::geometry {

namespace {

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

// sin of the angle between two non-zero vectors, via the cross product so
// small angles keep full relative precision.
double sine_between(Vec3 a, Vec3 b) {
  const double s = norm(cross(a, b)) / (norm(a) * norm(b));
  return std::min(s, 1.0);
}

}  // namespace

void LinkGeometry::validate() const {
  if (!finite_all({tx_rx_horizontal, tx_ris_horizontal, lateral_offset, tx_height, rx_height,
                   ris_height})) {
    throw ArgumentError("geometry: all distances must be finite");
  }
  if (!(tx_rx_horizontal > 0.0)) throw ArgumentError("geometry.tx_rx_horizontal_m must be > 0");
  if (!(lateral_offset > 0.0)) throw ArgumentError("geometry.lateral_offset_m must be > 0");
  if (tx_height < 0.0 || rx_height < 0.0 || ris_height < 0.0) {
    throw ArgumentError("geometry: heights must be >= 0");
  }
}

LinkGeometry LinkGeometry::placed_at(double r1h) const {
  LinkGeometry g = *this;
  g.tx_ris_horizontal = r1h;
  return g;
}

LinkGeometry LinkGeometry::mirrored() const {
  LinkGeometry g = *this;
  g.tx_ris_horizontal = tx_rx_horizontal - tx_ris_horizontal;
  std::swap(g.tx_height, g.rx_height);
  return g;
}

LinkVectors link_vectors(const LinkGeometry& g) {
  g.validate();
  const double ys = g.lateral_offset;
  const double a = g.tx_ris_horizontal;
  const double b = g.tx_rx_horizontal - g.tx_ris_horizontal;
  const double dt = g.ris_height - g.tx_height;
  const double dr = g.ris_height - g.rx_height;
  const double in_plane_t = std::hypot(a, dt);
  const double in_plane_r = std::hypot(b, dr);
  return {std::hypot(in_plane_t, ys), std::hypot(in_plane_r, ys), std::atan2(in_plane_t, ys),
          std::atan2(in_plane_r, ys)};
}

void RisSpec::validate() const {
  if (!(unit_width > 0.0) || !(unit_height > 0.0) || !finite_all({unit_width, unit_height})) {
    throw ArgumentError("ris: unit dimensions must be finite and > 0");
  }
  if (columns < 1 || rows < 1) throw ArgumentError("ris: columns and rows must be >= 1");
  if (!(reflection >= 0.0 && reflection <= 1.0)) {
    throw ArgumentError("ris.reflection must lie in [0, 1]");
  }
}

RisSpec RisSpec::square(double area, double unit, double reflection) {
  if (!(area > 0.0) || !(unit > 0.0)) throw ArgumentError("ris: area and unit must be > 0");
  const double side = std::round(std::sqrt(area) / unit);
  if (side > std::numeric_limits<int>::max()) throw ArgumentError("ris: too many units");
  const int n = std::max(1, static_cast<int>(side));
  return {unit, unit, n, n, reflection};
}

bool FootprintEllipse::contains(PlanePoint p) const {
  const double dx = p.x - center.x;
  const double dz = p.z - center.z;
  const double u = (dx * major_axis.x + dz * major_axis.z) / alpha;
  const double v = (-dx * major_axis.z + dz * major_axis.x) / beta;
  return u * u + v * v <= 1.0;
}

FootprintEllipse footprint(double r1, double theta_i, double beamwidth) {
  if (!(r1 > 0.0) || !std::isfinite(r1)) throw DomainError("footprint: r1 must be finite and > 0");
  if (!(theta_i >= 0.0)) throw DomainError("footprint: theta_i must be >= 0");
  if (!(beamwidth > 0.0 && beamwidth < kPi)) {
    throw DomainError("footprint: beamwidth must lie in (0, pi)");
  }
  const double half = 0.5 * beamwidth;
  const double eps = std::sin(theta_i) / std::cos(half);
  if (!(theta_i + half < kPi / 2.0) || !(eps < 1.0)) {
    throw FootprintUnboundedError("footprint: beam edge at " +
                                  std::to_string(units::to_degrees(theta_i + half)) +
                                  " deg does not meet the surface plane");
  }
  FootprintEllipse e;
  e.alpha = std::sin(half) / std::cos(theta_i + half) * r1;
  e.eccentricity = eps;
  e.beta = e.alpha * std::sqrt(1.0 - eps * eps);
  e.area = kPi * e.alpha * e.beta;
  e.beamwidth = beamwidth;
  return e;
}

FootprintEllipse footprint(const LinkGeometry& g, double beamwidth) {
  const LinkVectors v = link_vectors(g);
  FootprintEllipse e = footprint(v.r1, v.theta_i, beamwidth);
  e.center = {g.tx_ris_horizontal, g.ris_height};
  const double ax = g.tx_ris_horizontal;
  const double az = g.ris_height - g.tx_height;
  const double len = std::hypot(ax, az);
  if (len > 0.0) e.major_axis = {ax / len, az / len};
  return e;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::SmallRis: return "SMALL_RIS";
    case Regime::Intermediate: return "INTERMEDIATE";
    case Regime::LargeRis: return "LARGE_RIS";
  }
  return "INTERMEDIATE";
}

EffectiveArea effective_area(double footprint_area, double ris_area, double small_ris_ratio) {
  if (!(footprint_area > 0.0) || !(ris_area > 0.0)) {
    throw ArgumentError("effective_area: both areas must be > 0");
  }
  if (ris_area >= footprint_area) return {footprint_area, Regime::LargeRis};
  const Regime r =
      ris_area / footprint_area <= small_ris_ratio ? Regime::SmallRis : Regime::Intermediate;
  return {ris_area, r};
}

double cophasing_phase(double r1, double r2, double wavelength) {
  const double c1 = r1 / wavelength;
  const double c2 = r2 / wavelength;
  double frac = (c1 - std::floor(c1)) + (c2 - std::floor(c2));
  frac -= std::floor(frac);
  if (frac == 0.0) return 0.0;
  const double phase = 2.0 * kPi * (1.0 - frac);
  return phase >= 2.0 * kPi ? 0.0 : phase;
}

IlluminatedRegion::IlluminatedRegion(const LinkGeometry& g, const RisSpec& ris,
                                     const antenna::RadioConfig& cfg,
                                     const antenna::AntennaSpec& tx,
                                     const antenna::AntennaSpec& rx)
    : geometry_(g), ris_(ris), tx_antenna_(tx), rx_antenna_(rx) {
  g.validate();
  ris.validate();
  cfg.validate();
  tx.validate();
  rx.validate();
  wavelength_ = cfg.wavelength();
  tx_max_gain_ = antenna::max_gain(tx, wavelength_);
  rx_max_gain_ = antenna::max_gain(rx, wavelength_);
  tx_ = g.tx_position();
  rx_ = g.rx_position();
  center_ = g.ris_center();
  tx_boresight_ = center_ - tx_;
  rx_boresight_ = center_ - rx_;
  footprint_ = geometry::footprint(g, antenna::fnbw(tx, wavelength_));

  // Rows that can touch the ellipse: its vertical half-extent plus one row.
  const double mx = footprint_.major_axis.x;
  const double mz = footprint_.major_axis.z;
  const double a2 = footprint_.alpha * footprint_.alpha;
  const double b2 = footprint_.beta * footprint_.beta;
  const double half_height = std::sqrt(a2 * mz * mz + b2 * mx * mx);
  const double mid_row = 0.5 * (ris.rows - 1);
  const double mid_col = 0.5 * (ris.columns - 1);
  const double row_reach = half_height / ris.unit_height + 1.0;
  const int row_lo = static_cast<int>(std::max(0.0, std::floor(mid_row - row_reach)));
  const int row_hi =
      static_cast<int>(std::min<double>(ris.rows - 1, std::ceil(mid_row + row_reach)));

  // Quadratic in the column offset for each row: A t^2 + B t + C <= 1.
  const double qa = mx * mx / a2 + mz * mz / b2;
  for (int row = row_lo; row <= row_hi; ++row) {
    const double dz = (row - mid_row) * ris.unit_height;
    const double qb = 2.0 * dz * mx * mz * (1.0 / a2 - 1.0 / b2);
    const double qc = dz * dz * (mz * mz / a2 + mx * mx / b2) - 1.0;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const double t_lo = (-qb - root) / (2.0 * qa);
    const double t_hi = (-qb + root) / (2.0 * qa);
    double c_lo = std::ceil(mid_col + t_lo / ris.unit_width);
    double c_hi = std::floor(mid_col + t_hi / ris.unit_width);
    c_lo = std::max(c_lo, 0.0);
    c_hi = std::min<double>(c_hi, ris.columns - 1);
    if (c_lo > c_hi + 1.0) continue;
    int first = static_cast<int>(c_lo);
    int last = static_cast<int>(c_hi);
    // Rounding can misplace an edge cell; settle the ends with the predicate.
    while (first <= last && !inside(first, row)) ++first;
    while (last >= first && !inside(last, row)) --last;
    if (first > last) {
      const int probe = std::clamp(static_cast<int>(std::lround(mid_col + 0.5 * (t_lo + t_hi) /
                                                                              ris.unit_width)),
                                   0, ris.columns - 1);
      if (!inside(probe, row)) continue;
      first = last = probe;
    }
    while (first > 0 && inside(first - 1, row)) --first;
    while (last + 1 < ris.columns && inside(last + 1, row)) ++last;
    rows_.push_back({row, first, last + 1});
    count_ += static_cast<std::size_t>(last + 1 - first);
  }
}

Vec3 IlluminatedRegion::position(int column, int row) const {
  const double x = (column - 0.5 * (ris_.columns - 1)) * ris_.unit_width;
  const double z = (row - 0.5 * (ris_.rows - 1)) * ris_.unit_height;
  return {center_.x + x, center_.y, center_.z + z};
}

bool IlluminatedRegion::inside(int column, int row) const {
  const Vec3 p = position(column, row);
  return footprint_.contains({p.x, p.z});
}

RuSample IlluminatedRegion::sample(int column, int row) const {
  RuSample s;
  s.column = column;
  s.row = row;
  s.position = position(column, row);
  const Vec3 to_tx = s.position - tx_;
  const Vec3 to_rx = s.position - rx_;
  s.r1n = norm(to_tx);
  s.r2n = norm(to_rx);
  const double ys = geometry_.lateral_offset;
  s.theta_in = std::atan2(std::hypot(to_tx.x, to_tx.z), ys);
  s.theta_rn = std::atan2(std::hypot(to_rx.x, to_rx.z), ys);
  s.tx_gain = antenna::dish_gain_from_sine(sine_between(tx_boresight_, to_tx), tx_antenna_, wavelength_);
  s.rx_gain = antenna::dish_gain_from_sine(sine_between(rx_boresight_, to_rx), rx_antenna_, wavelength_);
  s.phase = cophasing_phase(s.r1n, s.r2n, wavelength_);
  return s;
}

double IlluminatedRegion::amplitude(int column, int row) const {
  const Vec3 p = position(column, row);
  const Vec3 to_tx = p - tx_;
  const Vec3 to_rx = p - rx_;
  const double r1 = norm(to_tx);
  const double r2 = norm(to_rx);
  const double et =
      antenna::dish_field_from_sine(sine_between(tx_boresight_, to_tx), tx_antenna_.diameter_m, wavelength_);
  const double er =
      antenna::dish_field_from_sine(sine_between(rx_boresight_, to_rx), rx_antenna_.diameter_m, wavelength_);
  // G_s(theta) = 4 cos(theta) with cos(theta) = y_s / r.
  const double ys = geometry_.lateral_offset;
  const double gains = tx_max_gain_ * rx_max_gain_ * 16.0 * ys * ys / (r1 * r2);
  return std::sqrt(gains) * std::abs(et * er) / (r1 * r2);
}

std::vector<RuSample> enumerate_rus(const LinkGeometry& g, const RisSpec& ris,
                                    const antenna::RadioConfig& cfg,
                                    const antenna::AntennaSpec& tx,
                                    const antenna::AntennaSpec& rx) {
  const IlluminatedRegion region(g, ris, cfg, tx, rx);
  if (region.count() == 0) throw EmptyIlluminationError("enumerate_rus: no unit is illuminated");
  std::vector<RuSample> out;
  out.reserve(region.count());
  for (const RowSpan& span : region.rows()) {
    for (int c = span.first_column; c < span.end_column; ++c) out.push_back(region.sample(c, span.row));
  }
  return out;
}

RegionSpread region_spread(const IlluminatedRegion& region) {
  if (region.count() == 0) throw EmptyIlluminationError("region_spread: no unit is illuminated");
  const LinkVectors v = link_vectors(region.link());
  double g_min = std::numeric_limits<double>::infinity();
  double g_max = 0.0;
  double r1_max = 0.0;
  double r2_max = 0.0;
  double th_i_min = std::numeric_limits<double>::infinity();
  double th_r_min = std::numeric_limits<double>::infinity();
  for (const RowSpan& span : region.rows()) {
    for (int c = span.first_column; c < span.end_column; ++c) {
      const RuSample s = region.sample(c, span.row);
      g_min = std::min(g_min, s.rx_gain);
      g_max = std::max(g_max, s.rx_gain);
      r1_max = std::max(r1_max, s.r1n);
      r2_max = std::max(r2_max, s.r2n);
      th_i_min = std::min(th_i_min, s.theta_in);
      th_r_min = std::min(th_r_min, s.theta_rn);
    }
  }
  RegionSpread out;
  out.rx_gain_max_over_min = g_min > 0.0 ? g_max / g_min : std::numeric_limits<double>::infinity();
  out.r1_over_max_r1n = v.r1 / r1_max;
  out.r2_over_max_r2n = v.r2 / r2_max;
  out.max_incidence_gain_ratio = std::cos(th_i_min) / std::cos(v.theta_i);
  out.max_departure_gain_ratio = std::cos(th_r_min) / std::cos(v.theta_r);
  return out;
}

}  // namespace risplace::geometry
