// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cmath>
#include <numbers>

namespace ris {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kReferenceTemperature = 290.0;  // K

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline double wavelength(double frequency_hz) { return kSpeedOfLight / frequency_hz; }
inline double wavenumber(double frequency_hz) { return 2.0 * kPi * frequency_hz / kSpeedOfLight; }

inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double power_to_db(double p) { return 10.0 * std::log10(p); }
inline double amplitude_to_db(double a) { return 20.0 * std::log10(a); }

/// Reduces an angle in degrees to [0, 360).
inline double wrap_360(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r >= 360.0) r -= 360.0;
    return r;
}

/// Folds an angle difference in degrees to [-180, 180).
inline double wrap_180(double deg) {
    return wrap_360(deg + 180.0) - 180.0;
}

}  // namespace ris
