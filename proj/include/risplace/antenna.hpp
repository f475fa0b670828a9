#pragma once

// Parabolic dish patterns, beamwidths, pattern energy fractions and the
// reflection-unit element pattern.

#include "risplace/numerics.hpp"
#include "risplace/units.hpp"

namespace risplace::antenna {

/// Carrier and receiver noise parameters shared by both link ends.
struct RadioConfig {
  double frequency_hz = 140e9;
  double tx_power_w = 1.0;
  double bandwidth_hz = 2e9;
  double noise_figure_db = 10.0;

  [[nodiscard]] double wavelength() const { return kSpeedOfLight / frequency_hz; }
  void validate() const;
};

/// Circular parabolic reflector.
struct AntennaSpec {
  double diameter_m = 0.15;
  double efficiency = 0.7;  // aperture efficiency, (0, 1]

  void validate() const;
};

/// sin(phi0 / 2) = kFirstNullFactor * lambda / D locates the first null.
inline constexpr double kFirstNullFactor = 1.22;
/// Widest half-power beamwidth still treated as a pencil beam (15 degrees).
inline constexpr double kPencilBeamLimit = kPi / 12.0;
/// Below this |phi| the pattern takes its limit value E(0) = 1.
inline constexpr double kBoresightCutoff = 1e-7;

/// Normalised far-field pattern (2 lambda / (pi D)) J1(pi D sin phi / lambda) / sin phi,
/// defined on [0, pi/2). Negative angles are folded by symmetry.
double dish_field(double phi, double diameter, double wavelength);

/// Same pattern written in terms of sin(phi); used on hot paths that already
/// have the sine from a cross product.
double dish_field_from_sine(double sin_phi, double diameter, double wavelength);

/// Boresight gain e (pi D / lambda)^2.
double max_gain(const AntennaSpec& spec, double wavelength);

/// G(phi) = 4 e (J1(pi D sin phi / lambda) / sin phi)^2 = max_gain * E(phi)^2.
double dish_gain(double phi, const AntennaSpec& spec, double wavelength);

double dish_gain_from_sine(double sin_phi, const AntennaSpec& spec, double wavelength);

/// First-null beamwidth 2 asin(null_factor lambda / D).
double fnbw(const AntennaSpec& spec, double wavelength, double null_factor = kFirstNullFactor);

/// Full angle at which E^2 falls to 1/2, found by bisection inside the main lobe.
double hpbw(const AntennaSpec& spec, double wavelength);

bool is_pencil_beam(const AntennaSpec& spec, double wavelength);

/// D / lambda >= 10; the pattern formula assumes an electrically large dish.
bool is_electrically_large(const AntennaSpec& spec, double wavelength);

/// Integral of E^2 over [-phi0/2, phi0/2] divided by the integral over
/// [-pi/2, pi/2].
double main_lobe_energy_fraction(const AntennaSpec& spec, double wavelength,
                                 double null_factor = kFirstNullFactor,
                                 const numerics::QuadratureSpec& quad = {});

struct StepEnergyFractions {
  double kappa = 0.0;  // unit step over the HPBW vs. main-lobe energy
  double mu = 0.0;     // unit step over the HPBW vs. total energy
};

StepEnergyFractions step_energy_fractions(const AntennaSpec& spec, double wavelength,
                                          double null_factor = kFirstNullFactor,
                                          const numerics::QuadratureSpec& quad = {});

/// Pattern energy integral of E^2 over [-limit, limit], limit <= pi/2.
double pattern_energy(const AntennaSpec& spec, double wavelength, double limit,
                      const numerics::QuadratureSpec& quad = {});

/// Reflection-unit element gain 4 cos(theta) on [0, pi/2).
double ru_gain(double theta);

struct NoisePower {
  double dbm = 0.0;
  double watts = 0.0;
};

/// Thermal noise -174 dBm/Hz + 10 log10(W) + F.
NoisePower noise_power(const RadioConfig& cfg);

}  // namespace risplace::antenna
