#pragma once

#include <cmath>
#include <numbers>

namespace risplace {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

namespace units {

// Power ratios only; everything inside the library is SI linear.
inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double watts_to_dbm(double watts) { return to_db(watts) + 30.0; }
inline double dbm_to_watts(double dbm) { return from_db(dbm - 30.0); }
inline constexpr double to_degrees(double rad) { return rad * 180.0 / kPi; }
inline constexpr double to_radians(double deg) { return deg * kPi / 180.0; }

}  // namespace units
}  // namespace risplace
