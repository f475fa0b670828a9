#include "risplace/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risplace/errors.hpp"

namespace risplace::antenna {

void RadioConfig::validate() const {
  if (!(frequency_hz > 0.0)) throw ArgumentError("radio.frequency_hz must be > 0");
  if (!(tx_power_w > 0.0)) throw ArgumentError("radio.tx_power_w must be > 0");
  if (!(bandwidth_hz > 0.0)) throw ArgumentError("radio.bandwidth_hz must be > 0");
  if (!std::isfinite(noise_figure_db)) throw ArgumentError("radio.noise_figure_db must be finite");
}

void AntennaSpec::validate() const {
  if (!(diameter_m > 0.0)) throw ArgumentError("antenna diameter must be > 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ArgumentError("antenna efficiency must lie in (0, 1]");
  }
}

double dish_field_from_sine(double sin_phi, double diameter, double wavelength) {
  const double x = kPi * diameter * sin_phi / wavelength;
  return 2.0 * numerics::bessel_j1_over_x(x);
}

double dish_field(double phi, double diameter, double wavelength) {
  const double a = std::abs(phi);
  if (!(a < kPi / 2.0)) throw DomainError("dish_field: angle must lie in [0, pi/2)");
  if (a < kBoresightCutoff) return 1.0;
  return dish_field_from_sine(std::sin(a), diameter, wavelength);
}

double max_gain(const AntennaSpec& spec, double wavelength) {
  const double k = kPi * spec.diameter_m / wavelength;
  return spec.efficiency * k * k;
}

double dish_gain(double phi, const AntennaSpec& spec, double wavelength) {
  const double e = dish_field(phi, spec.diameter_m, wavelength);
  return max_gain(spec, wavelength) * e * e;
}

double dish_gain_from_sine(double sin_phi, const AntennaSpec& spec, double wavelength) {
  const double e = dish_field_from_sine(sin_phi, spec.diameter_m, wavelength);
  return max_gain(spec, wavelength) * e * e;
}

double fnbw(const AntennaSpec& spec, double wavelength, double null_factor) {
  const double s = null_factor * wavelength / spec.diameter_m;
  if (s > 1.0) {
    throw NoNullError("fnbw: aperture of " + std::to_string(spec.diameter_m / wavelength) +
                      " wavelengths has no first null");
  }
  return 2.0 * std::asin(s);
}

double hpbw(const AntennaSpec& spec, double wavelength) {
  const double half_null = 0.5 * fnbw(spec, wavelength);
  auto excess = [&](double half) {
    const double e = dish_field(half, spec.diameter_m, wavelength);
    return e * e - 0.5;
  };
  // The quoted null factor is rounded, so stop the bracket just inside pi/2.
  const double upper = std::min(half_null, std::nextafter(kPi / 2.0, 0.0));
  return 2.0 * numerics::bisect_root(excess, 0.0, upper, 5e-11);
}

bool is_pencil_beam(const AntennaSpec& spec, double wavelength) {
  return hpbw(spec, wavelength) <= kPencilBeamLimit;
}

bool is_electrically_large(const AntennaSpec& spec, double wavelength) {
  return spec.diameter_m / wavelength >= 10.0;
}

double pattern_energy(const AntennaSpec& spec, double wavelength, double limit,
                      const numerics::QuadratureSpec& quad) {
  if (!(limit > 0.0 && limit <= kPi / 2.0)) {
    throw DomainError("pattern_energy: limit must lie in (0, pi/2]");
  }
  auto power = [&](double phi) {
    if (phi < kBoresightCutoff) return 1.0;
    const double e = dish_field_from_sine(std::sin(phi), spec.diameter_m, wavelength);
    return e * e;
  };
  // Roughly one lobe per lambda/D in sin(phi); four panels per lobe.
  const double lobes = spec.diameter_m / wavelength * std::sin(limit);
  const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * lobes)));
  return 2.0 * numerics::integrate_panels(power, 0.0, limit, panels, quad);
}

double main_lobe_energy_fraction(const AntennaSpec& spec, double wavelength, double null_factor,
                                 const numerics::QuadratureSpec& quad) {
  const double half_null = std::min(0.5 * fnbw(spec, wavelength, null_factor), kPi / 2.0);
  return pattern_energy(spec, wavelength, half_null, quad) /
         pattern_energy(spec, wavelength, kPi / 2.0, quad);
}

StepEnergyFractions step_energy_fractions(const AntennaSpec& spec, double wavelength,
                                          double null_factor,
                                          const numerics::QuadratureSpec& quad) {
  const double half_null = std::min(0.5 * fnbw(spec, wavelength, null_factor), kPi / 2.0);
  const double step = hpbw(spec, wavelength);
  return {step / pattern_energy(spec, wavelength, half_null, quad),
          step / pattern_energy(spec, wavelength, kPi / 2.0, quad)};
}

double ru_gain(double theta) {
  if (!(theta >= 0.0 && theta < kPi / 2.0)) {
    throw DomainError("ru_gain: angle must lie in [0, pi/2)");
  }
  return 4.0 * std::cos(theta);
}

NoisePower noise_power(const RadioConfig& cfg) {
  if (!(cfg.bandwidth_hz > 0.0)) throw ArgumentError("noise_power: bandwidth must be > 0");
  const double dbm = -174.0 + 10.0 * std::log10(cfg.bandwidth_hz) + cfg.noise_figure_db;
  return {dbm, units::dbm_to_watts(dbm)};
}

}  // namespace risplace::antenna
