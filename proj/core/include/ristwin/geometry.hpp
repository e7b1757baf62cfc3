// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cmath>

#include "ristwin/units.hpp"

namespace ris {

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
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Unit vector for polar angle theta (from +z) and azimuth phi, in degrees.
inline Vec3 direction(double theta_deg, double phi_deg) {
    const double t = deg_to_rad(theta_deg);
    const double p = deg_to_rad(phi_deg);
    return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

}  // namespace ris
