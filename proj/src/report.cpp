#include "risplace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "risplace/parallel.hpp"
#include "risplace/placement.hpp"

namespace risplace::report {

namespace {

using nlohmann::ordered_json;

std::optional<double> to_dbm(const std::optional<double>& w) {
  if (!w) return std::nullopt;
  return units::watts_to_dbm(*w);
}

std::optional<double> to_snr_db(const std::optional<double>& w, const antenna::RadioConfig& r) {
  if (!w) return std::nullopt;
  return linkbudget::snr(*w, r).db;
}

ordered_json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::vector<double> diagnostics_row(const geometry::RegionSpread& s) {
  return {s.rx_gain_max_over_min, s.r1_over_max_r1n, s.r2_over_max_r2n,
          s.max_incidence_gain_ratio, s.max_departure_gain_ratio};
}

SweepRecord evaluate_point(const config::ScenarioConfig& base, double value, bool diagnostics) {
  SweepRecord rec;
  rec.value = value;
  const config::ScenarioConfig cfg = base.at_sweep_value(value);
  try {
    const auto v = geometry::link_vectors(cfg.geometry);
    rec.r1_m = v.r1;
    rec.r2_m = v.r2;
    rec.theta_i_deg = units::to_degrees(v.theta_i);
    rec.theta_r_deg = units::to_degrees(v.theta_r);
    const auto result = linkbudget::evaluate(cfg.geometry, cfg.ris, cfg.radio, cfg.tx, cfg.rx,
                                             cfg.evaluate_options(1));
    rec.si_m2 = result.footprint_area;
    rec.s_m2 = result.effective_area;
    rec.active_units = result.active_units;
    rec.pr_exact_dbm = to_dbm(result.exact_w);
    rec.pr_closed_dbm = to_dbm(result.closed_w);
    rec.snr_exact_db = to_snr_db(result.exact_w, cfg.radio);
    rec.snr_closed_db = to_snr_db(result.closed_w, cfg.radio);
    rec.regime = std::string(geometry::to_string(result.regime));
    rec.warnings = result.warnings;
    if (diagnostics && result.active_units > 0) {
      const geometry::IlluminatedRegion region(cfg.geometry, cfg.ris, cfg.radio, cfg.tx, cfg.rx);
      rec.spread = geometry::region_spread(region);
    }
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

ordered_json solution_json(const placement::PlacementSolution& s, std::string_view solver,
                           const placement::Domain& domain) {
  ordered_json j;
  j["solver"] = solver;
  j["regime"] = geometry::to_string(s.regime);
  j["r1h_opt_m"] = s.r1h;
  j["snr_opt_db"] = number_or_null(s.snr_db);
  j["endpoint_optimum"] = s.endpoint_optimum;
  j["regime_violation"] = s.regime_violation;
  j["area_ratio"] = s.area_ratio;
  j["discriminant"] = number_or_null(s.discriminant);
  ordered_json points = ordered_json::array();
  for (const auto& p : s.stationary) {
    ordered_json q;
    q["r1h_m"] = p.r1h;
    q["kind"] = placement::to_string(p.kind);
    q["snr_db"] = number_or_null(p.snr_db);
    q["in_domain"] = p.in_domain;
    points.push_back(q);
  }
  j["stationary_points"] = points;
  j["domain"] = {domain.lo, domain.hi};
  return j;
}

ordered_json optimize_one(const config::ScenarioConfig& cfg, bool oracle, unsigned threads) {
  const auto& g = cfg.geometry;
  const placement::Domain domain = cfg.domain.value_or(placement::default_domain(g));

  const auto small = [&] {
    return placement::solve_small(g, cfg.ris, cfg.radio, cfg.tx, cfg.rx, domain,
                                  cfg.small_ris_ratio);
  };
  const auto large = [&] {
    return placement::solve_large_placement(g, cfg.ris, cfg.radio, cfg.tx, cfg.rx, domain);
  };
  std::string_view solver = "SMALL";
  const placement::PlacementSolution sol = [&] {
    switch (cfg.mode) {
      case linkbudget::Mode::Small: return small();
      case linkbudget::Mode::Large: solver = "LARGE"; return large();
      case linkbudget::Mode::Exact:
      case linkbudget::Mode::Auto: break;
    }
    // Large-surface solution if the surface still covers the footprint there.
    auto candidate = large();
    if (!candidate.regime_violation) {
      solver = "LARGE";
      return candidate;
    }
    return small();
  }();
  ordered_json j = solution_json(sol, solver, domain);
  if (oracle) {
    placement::NumericOptions opts;
    opts.grid = cfg.oracle_grid;
    opts.refine_tol = cfg.refine_tol_m;
    opts.threads = threads;
    const auto best = placement::solve_numeric(g, cfg.ris, cfg.radio, cfg.tx, cfg.rx,
                                               cfg.oracle_mode, domain, opts);
    ordered_json o;
    o["mode"] = linkbudget::to_string(cfg.oracle_mode);
    o["grid"] = cfg.oracle_grid;
    o["argmax_m"] = best.argmax;
    o["snr_db"] = number_or_null(best.value);
    o["gap_m"] = std::abs(sol.r1h - best.argmax);
    o["gap_fraction_of_rh"] = std::abs(sol.r1h - best.argmax) / g.tx_rx_horizontal;
    j["oracle"] = o;
  } else {
    j["oracle"] = nullptr;
  }
  return j;
}

}  // namespace

std::string format_number(std::optional<double> v) {
  if (!v) return "";
  if (std::isnan(*v)) return "nan";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::vector<SweepRecord> run_sweep(const config::ScenarioConfig& cfg, unsigned threads,
                                   bool diagnostics) {
  std::vector<double> values;
  if (cfg.sweep) {
    for (int k = 0; k < cfg.sweep->steps; ++k) values.push_back(cfg.sweep->at(k));
  } else {
    if (!cfg.has_tx_ris_horizontal) {
      throw config::ConfigError("geometry.tx_ris_horizontal_m: required without a sweep block");
    }
    values.push_back(cfg.geometry.tx_ris_horizontal);
  }
  std::vector<SweepRecord> out(values.size());
  parallel_for(values.size(), threads,
               [&](std::size_t k) { out[k] = evaluate_point(cfg, values[k], diagnostics); });
  return out;
}

void write_csv(std::ostream& out, const config::ScenarioConfig& cfg,
               std::span<const SweepRecord> records, bool diagnostics) {
  const std::string var(cfg.sweep ? config::to_string(cfg.sweep->variable) : "r1h");
  out << kCsvHeader;
  if (diagnostics) out << ',' << kDiagnosticsHeader;
  out << '\n';
  for (const auto& r : records) {
    out << var << ',' << format_number(r.value) << ',' << format_number(r.r1_m) << ','
        << format_number(r.r2_m) << ',' << format_number(r.theta_i_deg) << ','
        << format_number(r.theta_r_deg) << ',' << format_number(r.si_m2) << ','
        << format_number(r.s_m2) << ',';
    if (r.active_units) out << *r.active_units;
    out << ',' << format_number(r.pr_exact_dbm) << ',' << format_number(r.pr_closed_dbm) << ','
        << format_number(r.snr_exact_db) << ',' << format_number(r.snr_closed_db) << ','
        << r.regime.value_or("");
    if (diagnostics) {
      if (r.spread) {
        for (double d : diagnostics_row(*r.spread)) out << ',' << format_number(d);
      } else {
        out << ",,,,,";
      }
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const config::ScenarioConfig& cfg,
                std::span<const SweepRecord> records, bool diagnostics) {
  ordered_json doc;
  doc["sweep_var"] = cfg.sweep ? config::to_string(cfg.sweep->variable) : "r1h";
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    j["value"] = r.value;
    j["r1_m"] = number_or_null(r.r1_m);
    j["r2_m"] = number_or_null(r.r2_m);
    j["theta_i_deg"] = number_or_null(r.theta_i_deg);
    j["theta_r_deg"] = number_or_null(r.theta_r_deg);
    j["Si_m2"] = number_or_null(r.si_m2);
    j["S_m2"] = number_or_null(r.s_m2);
    j["M"] = r.active_units ? ordered_json(*r.active_units) : ordered_json(nullptr);
    j["PR_exact_dBm"] = number_or_null(r.pr_exact_dbm);
    j["PR_closed_dBm"] = number_or_null(r.pr_closed_dbm);
    j["snr_exact_dB"] = number_or_null(r.snr_exact_db);
    j["snr_closed_dB"] = number_or_null(r.snr_closed_db);
    j["regime"] = r.regime ? ordered_json(*r.regime) : ordered_json(nullptr);
    if (diagnostics) {
      const char* names[] = {"max_over_min_Grn", "r1_over_max_r1n", "r2_over_max_r2n",
                             "max_Gs_in_ratio", "max_Gs_rn_ratio"};
      const auto vals = r.spread ? diagnostics_row(*r.spread) : std::vector<double>{};
      for (std::size_t k = 0; k < 5; ++k) {
        j[names[k]] = vals.empty() ? ordered_json(nullptr) : ordered_json(vals[k]);
      }
    }
    if (!r.error.empty()) j["error"] = r.error;
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    rows.push_back(j);
  }
  doc["records"] = rows;
  out << doc.dump(2) << '\n';
}

void write_svg(std::ostream& out, const config::ScenarioConfig& cfg,
               std::span<const SweepRecord> records) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& r : records) {
    for (const auto& y : {r.snr_exact_db, r.snr_closed_db}) {
      if (!y || !std::isfinite(*y)) continue;
      x_lo = std::min(x_lo, r.value);
      x_hi = std::max(x_hi, r.value);
      y_lo = std::min(y_lo, *y);
      y_hi = std::max(y_hi, *y);
    }
  }
  if (!(x_lo < x_hi)) x_lo -= 1, x_hi += 1;
  if (!(y_lo < y_hi)) y_lo -= 1, y_hi += 1;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); };
  auto py = [&](double y) {
    return kTop + (y_hi - y) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  };
  char buf[128];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" ", kLeft,
                kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  out << buf << "fill=\"none\" stroke=\"black\"/>\n";
  const std::pair<const char*, std::optional<double> SweepRecord::*> series[] = {
      {"#1f77b4", &SweepRecord::snr_exact_db}, {"#d62728", &SweepRecord::snr_closed_db}};
  for (const auto& [colour, member] : series) {
    std::string points;
    for (const auto& r : records) {
      const auto& y = r.*member;
      if (!y || !std::isfinite(*y)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.value), py(*y));
      points += buf;
    }
    if (points.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
        << points << "\"/>\n";
  }
  const std::string var(cfg.sweep ? config::to_string(cfg.sweep->variable) : "r1h");
  std::snprintf(buf, sizeof buf, "%.4g", x_lo);
  out << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 30 << "\" font-size=\"12\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.4g", x_hi);
  out << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - 30
      << "\" font-size=\"12\" text-anchor=\"end\">" << buf << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">" << var << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.4g", y_hi);
  out << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 10
      << "\" font-size=\"12\" text-anchor=\"end\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.4g", y_lo);
  out << "<text x=\"" << kLeft - 5 << "\" y=\"" << kHeight - kBottom
      << "\" font-size=\"12\" text-anchor=\"end\">" << buf << "</text>\n";
  out << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 15
      << "\" font-size=\"12\" fill=\"#1f77b4\">SNR exact (dB)</text>\n";
  out << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 30
      << "\" font-size=\"12\" fill=\"#d62728\">SNR closed form (dB)</text>\n";
  out << "</svg>\n";
}

nlohmann::ordered_json optimize(const config::ScenarioConfig& cfg, bool oracle, unsigned threads) {
  ordered_json doc;
  const bool swept = cfg.sweep && cfg.sweep->variable != config::SweepVariable::TxRisHorizontal;
  doc["sweep_var"] = swept ? ordered_json(config::to_string(cfg.sweep->variable))
                           : ordered_json(nullptr);
  ordered_json results = ordered_json::array();
  if (swept) {
    for (int k = 0; k < cfg.sweep->steps; ++k) {
      const double value = cfg.sweep->at(k);
      ordered_json j;
      j["value"] = value;
      j.update(optimize_one(cfg.at_sweep_value(value), oracle, threads));
      results.push_back(j);
    }
  } else {
    ordered_json j;
    j["value"] = nullptr;
    j.update(optimize_one(cfg, oracle, threads));
    results.push_back(j);
  }
  doc["results"] = results;
  return doc;
}

std::vector<AnchorResult> run_anchors(double null_factor) {
  const antenna::RadioConfig radio;
  const double lambda = radio.wavelength();
  const antenna::AntennaSpec tx;
  std::vector<AnchorResult> out;
  auto add = [&](std::string name, double expected, double tolerance, double actual) {
    out.push_back({std::move(name), expected, tolerance, actual,
                   std::abs(actual - expected) <= tolerance});
  };

  const antenna::AntennaSpec pencil_limit{3.94 * lambda, 0.7};
  add("main_lobe_energy_fraction D/lambda=3.94", 0.97, 0.005,
      antenna::main_lobe_energy_fraction(pencil_limit, lambda, null_factor));
  const auto steps = antenna::step_energy_fractions(pencil_limit, lambda, null_factor);
  add("step_energy_over_main_lobe D/lambda=3.94", 0.97, 0.005, steps.kappa);
  add("step_energy_over_total D/lambda=3.94", 0.94, 0.005, steps.mu);
  add("hpbw_deg D=0.15m f=140GHz", 1.25, 0.05, units::to_degrees(antenna::hpbw(tx, lambda)));

  const double null_width = antenna::fnbw(tx, lambda, null_factor);
  auto footprint_range = [&](double rh, double ys, std::initializer_list<double> tx_heights,
                             double r1h_hi, int points) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double ht : tx_heights) {
      for (int k = 0; k < points; ++k) {
        const double r1h = r1h_hi * k / (points - 1);
        const geometry::LinkGeometry g{rh, r1h, ys, ht, 3.0, 12.0};
        const double s = geometry::footprint(g, null_width).area;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
    return std::pair{lo, hi};
  };
  add("min_footprint_m2 rh=30 ys=5", 0.09, 0.009, footprint_range(30, 5, {6, 3}, 30, 301).first);
  add("min_footprint_m2 rh=30 ys=15", 0.69, 0.069, footprint_range(30, 15, {6, 3}, 30, 301).first);
  add("footprint_m2 rh=80 ys=10 r1h=0", 0.15, 0.015,
      geometry::footprint(geometry::LinkGeometry{80, 0, 10, 6, 3, 12}, null_width).area);
  add("max_footprint_m2 rh=20 ys=10 r1h<=40", 7.97, 0.797,
      footprint_range(20, 10, {6}, 40, 401).second);

  {
    const geometry::LinkGeometry g{80, 0, 5, 6, 3, 12};
    const auto ris = geometry::RisSpec::square(0.012, 0.5 * lambda);
    const antenna::AntennaSpec rx{0.03, 0.7};
    const auto sol = placement::solve_small(g, ris, radio, tx, rx);
    double min_db = std::numeric_limits<double>::quiet_NaN();
    for (const auto& p : sol.stationary) {
      if (p.kind == placement::Stationary::LocalMin && p.in_domain) min_db = p.snr_db;
    }
    add("snr_spread_db rh=80 ys=5", 12.5, 1.0, sol.snr_db - min_db);
  }
  {
    std::vector<double> ys;
    for (int k = 0; k <= 3900; ++k) ys.push_back(1.0 + 0.01 * k);
    const auto sweep = placement::discriminant_sweep(geometry::LinkGeometry{80, 0, 1, 6, 3, 12}, ys);
    int changes = 0;
    for (std::size_t k = 1; k < sweep.size(); ++k) {
      if ((sweep[k].discriminant > 0.0) != (sweep[k - 1].discriminant > 0.0)) ++changes;
    }
    add("discriminant_sign_changes rh=80 ys=1..40", 1.0, 0.0, changes);
  }
  return out;
}

}  // namespace risplace::report
