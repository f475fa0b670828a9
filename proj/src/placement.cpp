#include "risplace/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risplace/errors.hpp"

namespace risplace::placement {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieDb = 1e-9;

// Sign of the centrally differenced derivative just left and right of x.
// The probe offset stays well inside the gap to neighbouring roots.
Stationary classify(const std::function<double(double)>& f, double x, double scale,
                    double neighbour_gap) {
  const double offset = std::min(1e-3 * scale, 0.25 * neighbour_gap);
  const double h = std::min(1e-4 * scale, 0.5 * offset);
  auto slope = [&](double at) { return (f(at + h) - f(at - h)) / (2.0 * h); };
  const double left = slope(x - offset);
  const double right = slope(x + offset);
  if (left > 0.0 && right < 0.0) return Stationary::LocalMax;
  if (left < 0.0 && right > 0.0) return Stationary::LocalMin;
  return Stationary::Flat;
}

double gap_to_neighbours(const std::vector<double>& roots, std::size_t k, double fallback) {
  double gap = fallback;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j != k && roots[j] != roots[k]) gap = std::min(gap, std::abs(roots[j] - roots[k]));
  }
  return gap;
}

struct Candidate {
  double x;
  double value;
  bool endpoint;
};

// Highest value; within kTieDb the smaller x wins.
Candidate pick(std::vector<Candidate> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.x < b.x; });
  Candidate best = candidates.front();
  for (const auto& c : candidates) {
    if (c.value > best.value + kTieDb) best = c;
  }
  return best;
}

double safe(const std::function<double(double)>& f, double x) {
  try {
    const double v = f(x);
    return std::isnan(v) ? kNegInf : v;
  } catch (const Error&) {
    return kNegInf;
  }
}

double footprint_area_at(const geometry::LinkGeometry& g, const antenna::AntennaSpec& tx,
                         const antenna::RadioConfig& cfg, double r1h) {
  return geometry::footprint(g.placed_at(r1h), antenna::fnbw(tx, cfg.wavelength())).area;
}

}  // namespace

double CubicCoefficients::discriminant() const {
  return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
         27.0 * a * a * d * d;
}

CubicCoefficients small_ris_cubic(const geometry::LinkGeometry& g) {
  g.validate();
  const double rh = g.tx_rx_horizontal;
  const double ys2 = g.lateral_offset * g.lateral_offset;
  const double dt = g.ris_height - g.tx_height;
  const double dr = g.ris_height - g.rx_height;
  return {6.0, -9.0 * rh, 3.0 * (2.0 * ys2 + rh * rh + dt * dt + dr * dr),
          -3.0 * rh * (ys2 + dt * dt)};
}

void Domain::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ArgumentError("placement.domain must be finite with lo < hi");
  }
}

Domain default_domain(const geometry::LinkGeometry& g) {
  return {0.0, 2.0 * g.tx_rx_horizontal};
}

std::string_view to_string(Stationary s) {
  switch (s) {
    case Stationary::LocalMax: return "local_max";
    case Stationary::LocalMin: return "local_min";
    case Stationary::Flat: return "flat";
  }
  return "flat";
}

double small_ris_snr_db(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                        const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                        const antenna::AntennaSpec& rx, double r1h) {
  return linkbudget::snr(linkbudget::small_ris_power(g.placed_at(r1h), ris, cfg, tx, rx), cfg).db;
}

double large_ris_snr_db(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                        const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                        const antenna::AntennaSpec& rx, double r1h) {
  return linkbudget::snr(linkbudget::large_ris_power(g.placed_at(r1h), ris, cfg, tx, rx), cfg).db;
}

double large_ris_objective_db(const geometry::LinkGeometry& g, double r1h) {
  const auto v = geometry::link_vectors(g.placed_at(r1h));
  return 30.0 * std::log10(v.r1 / v.r2);
}

PlacementSolution solve_small(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                              const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                              const antenna::AntennaSpec& rx, std::optional<Domain> domain,
                              double small_ris_ratio) {
  const Domain dom = domain.value_or(default_domain(g));
  dom.validate();
  const CubicCoefficients k = small_ris_cubic(g);
  const auto roots = numerics::solve_cubic(k.a, k.b, k.c, k.d);
  const double rh = g.tx_rx_horizontal;
  auto f = [&](double x) { return small_ris_snr_db(g, ris, cfg, tx, rx, x); };

  PlacementSolution out;
  out.discriminant = roots.discriminant;
  out.regime = geometry::Regime::SmallRis;

  std::vector<Candidate> candidates{{dom.lo, safe(f, dom.lo), true}, {dom.hi, safe(f, dom.hi), true}};
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    if (i > 0 && roots.roots[i] == roots.roots[i - 1]) continue;
    StationaryPoint p;
    p.r1h = roots.roots[i];
    p.kind = classify(f, p.r1h, rh, gap_to_neighbours(roots.roots, i, rh));
    p.snr_db = safe(f, p.r1h);
    p.in_domain = dom.contains(p.r1h);
    out.stationary.push_back(p);
    if (p.in_domain) candidates.push_back({p.r1h, p.snr_db, false});
  }

  const Candidate best = pick(candidates);
  out.r1h = best.x;
  out.snr_db = best.value;
  out.endpoint_optimum = best.endpoint;
  try {
    out.area_ratio = ris.area() / footprint_area_at(g, tx, cfg, out.r1h);
    out.regime_violation = out.area_ratio > small_ris_ratio;
  } catch (const Error&) {
    out.area_ratio = 0.0;
    out.regime_violation = false;
  }
  return out;
}

std::vector<double> large_ris_roots(const geometry::LinkGeometry& g) {
  g.validate();
  const double rh = g.tx_rx_horizontal;
  const double dt2 = (g.ris_height - g.tx_height) * (g.ris_height - g.tx_height);
  const double dr2 = (g.ris_height - g.rx_height) * (g.ris_height - g.rx_height);
  const double ys2 = g.lateral_offset * g.lateral_offset;
  return numerics::solve_quadratic(rh, dt2 - rh * rh - dr2, -rh * (ys2 + dt2));
}

double solve_large(const geometry::LinkGeometry& g) {
  // The constant term is negative, so both roots are real with opposite signs.
  return large_ris_roots(g).back();
}

PlacementSolution solve_large_placement(const geometry::LinkGeometry& g,
                                        const geometry::RisSpec& ris,
                                        const antenna::RadioConfig& cfg,
                                        const antenna::AntennaSpec& tx,
                                        const antenna::AntennaSpec& rx,
                                        std::optional<Domain> domain) {
  const Domain dom = domain.value_or(default_domain(g));
  dom.validate();
  const auto roots = large_ris_roots(g);
  const double rh = g.tx_rx_horizontal;
  auto objective = [&](double x) { return large_ris_objective_db(g, x); };
  auto snr_at = [&](double x) { return safe([&](double y) {
                                  return large_ris_snr_db(g, ris, cfg, tx, rx, y);
                                }, x); };

  PlacementSolution out;
  out.regime = geometry::Regime::LargeRis;
  std::vector<Candidate> candidates{{dom.lo, safe(objective, dom.lo), true},
                                    {dom.hi, safe(objective, dom.hi), true}};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i > 0 && roots[i] == roots[i - 1]) continue;
    StationaryPoint p;
    p.r1h = roots[i];
    p.kind = classify(objective, p.r1h, rh, gap_to_neighbours(roots, i, rh));
    p.snr_db = snr_at(p.r1h);
    p.in_domain = dom.contains(p.r1h);
    out.stationary.push_back(p);
    if (p.in_domain) candidates.push_back({p.r1h, safe(objective, p.r1h), false});
  }
  const Candidate best = pick(candidates);
  out.r1h = best.x;
  out.snr_db = snr_at(best.x);
  out.endpoint_optimum = best.endpoint;
  try {
    out.area_ratio = ris.area() / footprint_area_at(g, tx, cfg, out.r1h);
    out.regime_violation = out.area_ratio < 1.0;
  } catch (const Error&) {
    out.area_ratio = 0.0;
    out.regime_violation = true;
  }
  return out;
}

numerics::Maximum solve_numeric(const std::function<double(double)>& snr_db,
                                const Domain& domain, const NumericOptions& options) {
  domain.validate();
  auto guarded = [&](double x) { return safe(snr_db, x); };
  return numerics::scalar_maximize(guarded, domain.lo, domain.hi, options.grid, options.refine_tol);
}

numerics::Maximum solve_numeric(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                                const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                                const antenna::AntennaSpec& rx, linkbudget::Mode mode,
                                std::optional<Domain> domain, const NumericOptions& options) {
  const Domain dom = domain.value_or(default_domain(g));
  std::function<double(double)> f;
  switch (mode) {
    case linkbudget::Mode::Small:
      f = [&](double x) { return small_ris_snr_db(g, ris, cfg, tx, rx, x); };
      break;
    case linkbudget::Mode::Large:
      f = [&](double x) { return large_ris_snr_db(g, ris, cfg, tx, rx, x); };
      break;
    case linkbudget::Mode::Exact:
      f = [&](double x) {
        const geometry::IlluminatedRegion region(g.placed_at(x), ris, cfg, tx, rx);
        return linkbudget::snr(linkbudget::exact_received_power(region, cfg, ris, options.threads),
                               cfg)
            .db;
      };
      break;
    case linkbudget::Mode::Auto:
      throw ArgumentError("solve_numeric: choose exact, small or large");
  }
  return solve_numeric(f, dom, options);
}

std::vector<DiscriminantPoint> discriminant_sweep(const geometry::LinkGeometry& g,
                                                  std::span<const double> lateral_offsets) {
  if (lateral_offsets.empty()) throw ArgumentError("discriminant_sweep: no offsets given");
  std::vector<DiscriminantPoint> out;
  out.reserve(lateral_offsets.size());
  for (double ys : lateral_offsets) {
    geometry::LinkGeometry h = g;
    h.lateral_offset = ys;
    out.push_back({ys, small_ris_cubic(h).discriminant()});
  }
  return out;
}

}  // namespace risplace::placement
