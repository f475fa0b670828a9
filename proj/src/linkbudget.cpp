#include "risplace/linkbudget.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "risplace/errors.hpp"
#include "risplace/numerics.hpp"
#include "risplace/parallel.hpp"

namespace risplace::linkbudget {

namespace {

using geometry::Regime;

double unit_amplitude(const geometry::RuSample& s) {
  const double gains =
      s.tx_gain * s.rx_gain * antenna::ru_gain(s.theta_in) * antenna::ru_gain(s.theta_rn);
  return std::sqrt(gains) / (s.r1n * s.r2n);
}

void check_angles(const geometry::LinkVectors& v) {
  if (!(v.theta_i < kPi / 2.0) || !(v.theta_r < kPi / 2.0)) {
    throw DomainError("closed form: incidence or departure angle reaches pi/2");
  }
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Exact: return "EXACT";
    case Mode::Small: return "SMALL";
    case Mode::Large: return "LARGE";
    case Mode::Auto: return "AUTO";
  }
  return "AUTO";
}

Mode parse_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "exact") return Mode::Exact;
  if (lower == "small") return Mode::Small;
  if (lower == "large") return Mode::Large;
  if (lower == "auto") return Mode::Auto;
  throw ArgumentError("mode must be one of exact, small, large, auto (got '" + std::string(text) +
                      "')");
}

double power_scale(const antenna::RadioConfig& cfg, const geometry::RisSpec& ris) {
  const double k = cfg.wavelength() / (4.0 * kPi);
  const double k2 = k * k;
  return k2 * k2 * cfg.tx_power_w * ris.reflection * ris.reflection;
}

double exact_received_power(std::span<const geometry::RuSample> samples,
                            const antenna::RadioConfig& cfg, const geometry::RisSpec& ris) {
  if (samples.empty()) throw EmptyIlluminationError("exact_received_power: no samples");
  numerics::CompensatedSum sum;
  for (const auto& s : samples) sum.add(unit_amplitude(s));
  const double a = sum.value();
  return power_scale(cfg, ris) * a * a;
}

double exact_received_power(const geometry::IlluminatedRegion& region,
                            const antenna::RadioConfig& cfg, const geometry::RisSpec& ris,
                            unsigned threads) {
  if (region.count() == 0) throw EmptyIlluminationError("exact_received_power: no unit is lit");
  const auto rows = region.rows();
  std::vector<numerics::CompensatedSum> partial(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    const geometry::RowSpan& span = rows[k];
    numerics::CompensatedSum sum;
    for (int c = span.first_column; c < span.end_column; ++c) sum.add(region.amplitude(c, span.row));
    partial[k] = sum;
  });
  numerics::CompensatedSum total;
  for (const auto& p : partial) total.merge(p);
  const double a = total.value();
  return power_scale(cfg, ris) * a * a;
}

double phased_received_power(std::span<const geometry::RuSample> samples,
                             std::span<const double> phases, const antenna::RadioConfig& cfg,
                             const geometry::RisSpec& ris) {
  if (samples.size() != phases.size()) {
    throw ArgumentError("phased_received_power: " + std::to_string(phases.size()) +
                        " phases for " + std::to_string(samples.size()) + " samples");
  }
  if (samples.empty()) throw EmptyIlluminationError("phased_received_power: no samples");
  const double lambda = cfg.wavelength();
  numerics::CompensatedSum re;
  numerics::CompensatedSum im;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const auto& s = samples[n];
    // theta_n + 2 pi (r1 + r2) / lambda, with the path term already reduced.
    const double residual = phases[n] - geometry::cophasing_phase(s.r1n, s.r2n, lambda);
    const double a = unit_amplitude(s);
    re.add(a * std::cos(residual));
    im.add(-a * std::sin(residual));
  }
  const double x = re.value();
  const double y = im.value();
  return power_scale(cfg, ris) * (x * x + y * y);
}

double small_ris_power(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                       const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                       const antenna::AntennaSpec& rx) {
  ris.validate();
  const auto v = geometry::link_vectors(g);
  check_angles(v);
  const double lambda = cfg.wavelength();
  const double units = ris.area() / (ris.unit_width * ris.unit_height);
  return power_scale(cfg, ris) * units * units * antenna::max_gain(tx, lambda) *
         antenna::max_gain(rx, lambda) * antenna::ru_gain(v.theta_i) *
         antenna::ru_gain(v.theta_r) / (v.r1 * v.r1 * v.r2 * v.r2);
}

LargeRisForms large_ris_forms(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                              const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                              const antenna::AntennaSpec& rx) {
  ris.validate();
  const auto v = geometry::link_vectors(g);
  check_angles(v);
  const double lambda = cfg.wavelength();
  const double half_power = antenna::hpbw(tx, lambda);
  geometry::FootprintEllipse fp;
  try {
    fp = geometry::footprint(v.r1, v.theta_i, half_power);
  } catch (const FootprintUnboundedError& e) {
    throw DomainError(std::string("large-surface closed form: ") + e.what());
  }
  const double common = power_scale(cfg, ris) * antenna::max_gain(tx, lambda) *
                        antenna::max_gain(rx, lambda) * antenna::ru_gain(v.theta_i) *
                        antenna::ru_gain(v.theta_r) /
                        (ris.unit_width * ris.unit_width * ris.unit_height * ris.unit_height);

  LargeRisForms out;
  out.footprint_form = common * fp.area * fp.area / (v.r1 * v.r1 * v.r2 * v.r2);

  const double half = 0.5 * half_power;
  const double s = std::sin(half);
  const double c = std::cos(half + v.theta_i);
  const double si = std::sin(v.theta_i);
  const double ch = std::cos(half);
  const double ratio = v.r1 / v.r2;
  out.expanded_form = common * ratio * ratio * kPi * kPi * (s * s * s * s) / (c * c * c * c) *
                      (1.0 - si * si / (ch * ch));
  return out;
}

double large_ris_power(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                       const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                       const antenna::AntennaSpec& rx) {
  return large_ris_forms(g, ris, cfg, tx, rx).footprint_form;
}

Snr snr(double received_power_w, const antenna::RadioConfig& cfg) {
  if (!(received_power_w >= 0.0)) throw ArgumentError("snr: received power must be >= 0");
  const double linear = received_power_w / antenna::noise_power(cfg).watts;
  return {linear, linear > 0.0 ? units::to_db(linear) : -std::numeric_limits<double>::infinity()};
}

LinkBudgetResult evaluate(const geometry::LinkGeometry& g, const geometry::RisSpec& ris,
                          const antenna::RadioConfig& cfg, const antenna::AntennaSpec& tx,
                          const antenna::AntennaSpec& rx, const EvaluateOptions& options) {
  const double lambda = cfg.wavelength();
  LinkBudgetResult out;
  out.vectors = geometry::link_vectors(g);

  const geometry::IlluminatedRegion region(g, ris, cfg, tx, rx);
  out.footprint_area = region.footprint().area;
  const auto eff = geometry::effective_area(out.footprint_area, ris.area(), options.small_ris_ratio);
  out.effective_area = eff.area;
  out.regime = eff.regime;
  out.active_units = region.count();

  const double half_wave = 0.5 * lambda;
  if (std::abs(ris.unit_width - half_wave) > 1e-6 * half_wave ||
      std::abs(ris.unit_height - half_wave) > 1e-6 * half_wave) {
    out.warnings.emplace_back("unit spacing differs from lambda/2; mutual coupling is ignored");
  }
  if (!antenna::is_electrically_large(tx, lambda) || !antenna::is_electrically_large(rx, lambda)) {
    out.warnings.emplace_back("dish diameter below 10 wavelengths");
  }
  if (!antenna::is_pencil_beam(tx, lambda)) {
    out.warnings.emplace_back("TX half-power beamwidth exceeds 15 degrees");
  }

  try {
    out.small_w = small_ris_power(g, ris, cfg, tx, rx);
  } catch (const DomainError&) {
  }
  try {
    out.large_w = large_ris_power(g, ris, cfg, tx, rx);
  } catch (const DomainError&) {
  }

  const bool under_cap = out.active_units > 0 && out.active_units <= options.ru_cap;
  Mode wanted = options.mode;
  if (wanted == Mode::Auto) {
    switch (out.regime) {
      case Regime::SmallRis: wanted = Mode::Small; break;
      case Regime::LargeRis: wanted = Mode::Large; break;
      case Regime::Intermediate: wanted = Mode::Exact; break;
    }
  }
  const Mode closed_mode =
      wanted == Mode::Large || (wanted == Mode::Exact && out.regime == Regime::LargeRis)
          ? Mode::Large
          : Mode::Small;
  out.closed_w = closed_mode == Mode::Large ? out.large_w : out.small_w;

  if (under_cap && (options.compute_exact || wanted == Mode::Exact)) {
    out.exact_w = exact_received_power(region, cfg, ris, options.threads);
  }

  if (wanted == Mode::Exact) {
    if (out.exact_w) {
      out.path = Mode::Exact;
      out.received_power_w = *out.exact_w;
    } else if (out.active_units == 0) {
      throw EmptyIlluminationError("evaluate: no unit is illuminated");
    } else {
      out.warnings.push_back("active unit count " + std::to_string(out.active_units) +
                             " exceeds the cap; using the closed form");
      wanted = closed_mode;
    }
  }
  if (wanted != Mode::Exact) {
    const auto& value = wanted == Mode::Large ? out.large_w : out.small_w;
    if (!value) {
      // Recompute to surface the original error.
      if (wanted == Mode::Large) large_ris_power(g, ris, cfg, tx, rx);
      small_ris_power(g, ris, cfg, tx, rx);
      throw DomainError("evaluate: closed form unavailable");
    }
    out.path = wanted;
    out.received_power_w = *value;
  }
  out.snr = snr(out.received_power_w, cfg);
  return out;
}

}  // namespace risplace::linkbudget
