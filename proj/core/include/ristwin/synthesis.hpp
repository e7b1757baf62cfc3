// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ristwin/element.hpp"
#include "ristwin/surface.hpp"

namespace ris {

/// Beam direction: theta from broadside, phi azimuth, both degrees.
struct SteeringTarget {
    double theta_deg = 0.0;
    double phi_deg = 0.0;
};

inline constexpr double kMaxScanDeg = 60.0;

/// Phase (degrees, [0, 360)) an element must add so the feed's spherical
/// wavefront leaves the surface as a plane wave toward `target`:
///
///   k |feed - r| - k (r . u)
///
/// Throws DomainError for masked or out-of-range elements and non-positive
/// frequency.
double required_phase(const SurfaceLayout& layout, int row, int col, const SteeringTarget& target,
                      double frequency_hz);

/// Row-major required phases at the design frequency; NaN at masked positions.
std::vector<double> required_phases(const SurfaceLayout& layout, const SteeringTarget& target);

struct QuantizedPhase {
    std::size_t index = 0;
    double error_deg = 0.0;  // phi_req - chosen, folded to [-180, 180)
};

/// Nearest available phase in circular distance; ties go to the lowest index.
QuantizedPhase quantize_phase(double required_deg, std::span<const double> available_deg);

/// Phases of an ideal n-bit element: 360 k / 2^n.
std::vector<double> ideal_phase_set(int bits);

struct PencilOptions {
    bool allow_beyond_scan_limit = false;
    ElementModel element{};
};

Codeword synthesize_pencil(const SurfaceLayout& layout, const SteeringTarget& target, ElementModelKind kind,
                           const PencilOptions& options = {});

/// Signed residual (required - realized phase) for every active element of a
/// codeword, row-major, NaN at masked positions.
std::vector<double> phase_residuals(const SurfaceLayout& layout, const Codeword& codeword,
                                    const SteeringTarget& target, ElementModelKind kind,
                                    const ElementModel& element = {});

/// Target magnitude mask for phase-only shaped-beam synthesis.
///
/// `target` and `weight` are theta-major over theta_deg x phi_deg. A cell with
/// zero weight is unconstrained; elsewhere the pattern magnitude is driven
/// toward alpha * target with alpha a free common scale.
struct ShapedBeamSpec {
    std::vector<double> theta_deg;
    std::vector<double> phi_deg;
    std::vector<double> target;
    std::vector<double> weight;
    int iteration_limit = 60;
    double tolerance = 1e-6;

    /// Throws DomainError if sizes disagree, any value is negative or every
    /// weighted target is zero.
    void validate() const;
};

struct ShapedResult {
    Codeword codeword;
    int iterations = 0;
    bool converged = false;
    /// Weighted mean-square deviation after each unquantized iteration.
    std::vector<double> continuous_objective;
    /// Same objective after each quantized iteration.
    std::vector<double> quantized_objective;
    double final_objective = 0.0;
};

/// Alternating-projection synthesis: forward-radiate, impose the magnitude
/// mask, back-project onto phase-only excitations (exact per-element
/// coordinate minimization), first with continuous phases and then with the
/// element's discrete states. Starts from the pencil beam toward the
/// weighted centroid of the mask. Deterministic for a given seed, which only
/// fixes the element visiting order.
ShapedResult synthesize_shaped(const SurfaceLayout& layout, const ShapedBeamSpec& spec, ElementModelKind kind,
                               std::uint64_t seed, const ElementModel& element = {});

}  // namespace ris
