// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ristwin/element.hpp"
#include "ristwin/surface.hpp"
#include "ristwin/synthesis.hpp"

namespace ris {

using cplx = std::complex<double>;

/// Sampling grid over the front hemisphere (degrees, strictly increasing).
struct AngleGrid {
    std::vector<double> theta_deg;
    std::vector<double> phi_deg;

    /// theta in [0, 90] and phi in [0, 360) with the given steps.
    static AngleGrid hemisphere(double theta_step_deg = 0.5, double phi_step_deg = 0.5);

    std::size_t size() const { return theta_deg.size() * phi_deg.size(); }
    void validate() const;
};

/// Complex far-field samples E(theta, phi), theta-major.
struct FarFieldPattern {
    AngleGrid grid;
    std::vector<cplx> field;
    double frequency_hz = 0.0;
    std::string description;

    const cplx& at(std::size_t it, std::size_t ip) const { return field[it * grid.phi_deg.size() + ip]; }
    cplx& at(std::size_t it, std::size_t ip) { return field[it * grid.phi_deg.size() + ip]; }
};

/// Feed illumination at an element: cos^q_f(theta_f) / d * exp(-j k d),
/// theta_f measured from the feed boresight (feed toward surface centre).
cplx feed_illumination(const SurfaceLayout& layout, int row, int col, double frequency_hz);

/// Row-major element excitations illumination * Gamma(state); zero at masked
/// positions.
std::vector<cplx> element_excitations(const SurfaceLayout& layout, const Codeword& codeword, double frequency_hz,
                                      ElementModelKind kind, const ElementModel& element = {});

/// E(theta, phi) = cos^q_e(theta) * sum_n a_n exp(+j k r_n . u).
FarFieldPattern radiate_excitations(const SurfaceLayout& layout, const std::vector<cplx>& excitations,
                                    double frequency_hz, const AngleGrid& grid);

/// Field of a single direction without building a grid.
cplx field_at(const SurfaceLayout& layout, const std::vector<cplx>& excitations, double frequency_hz,
              double theta_deg, double phi_deg);

FarFieldPattern radiate(const SurfaceLayout& layout, const Codeword& codeword, double frequency_hz,
                        const AngleGrid& grid, ElementModelKind kind, const ElementModel& element = {});

struct Directivity {
    double dbi = 0.0;
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    std::size_t theta_index = 0;
    std::size_t phi_index = 0;
};

/// 4 pi |E_peak|^2 over the trapezoidal integral of |E|^2 sin(theta) on the
/// stored grid; back hemisphere contributes zero. Throws DomainError for an
/// all-zero pattern or a grid that does not cover the hemisphere with steps
/// of at most 1 degree.
Directivity directivity(const FarFieldPattern& pattern);

/// Fraction of the cos^(2 q_f) feed power intercepted by the physical aperture.
double spillover_efficiency(const SurfaceLayout& layout);

/// Illumination-weighted mean |Gamma|^2 in dB (<= 0).
double element_loss_db(const SurfaceLayout& layout, const Codeword& codeword, double frequency_hz,
                       ElementModelKind kind, const ElementModel& element = {});

struct GainBreakdown {
    double directivity_dbi = 0.0;
    double element_loss_db = 0.0;
    double spillover_db = 0.0;                 // computed regardless of the switch
    double gain_dbi = 0.0;                     // includes spillover when enabled
    double gain_without_spillover_dbi = 0.0;
    double gain_with_spillover_dbi = 0.0;
    double peak_theta_deg = 0.0;
    double peak_phi_deg = 0.0;
};

GainBreakdown gain(const FarFieldPattern& pattern, const SurfaceLayout& layout, const Codeword& codeword,
                   ElementModelKind kind, bool include_spillover = true, const ElementModel& element = {});

struct PatternMetrics {
    double peak_theta_deg = 0.0;
    double peak_phi_deg = 0.0;
    double directivity_dbi = 0.0;
    double gain_dbi = 0.0;           // equals directivity unless a gain is supplied
    double hpbw_deg[2] = {0.0, 0.0}; // [0]: cut in the peak's phi plane, [1]: orthogonal cut
    double sll_db[2] = {0.0, 0.0};   // per cut, relative to peak
    double sll_db_max = 0.0;
    double aperture_efficiency = 0.0;
    bool valid = true;               // false if the peak or a -3 dB crossing hits the grid edge
};

PatternMetrics metrics(const FarFieldPattern& pattern, const SurfaceLayout& layout);
PatternMetrics metrics(const FarFieldPattern& pattern, const SurfaceLayout& layout, double gain_dbi);

/// gain_lin * lambda^2 / (4 pi A). Throws DomainError for non-positive inputs.
double aperture_efficiency(double gain_dbi, double aperture_area_m2, double frequency_hz);

struct PatternOptions {
    ElementModelKind kind = ElementModelKind::Measured;
    ElementModel element{};
    bool include_spillover = true;
    double theta_step_deg = 0.5;
    double phi_step_deg = 0.5;
};

struct SweepPoint {
    double frequency_hz;
    double gain_dbi;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double peak_frequency_hz = 0.0;
    double peak_gain_dbi = 0.0;
    double lower_edge_hz = 0.0;
    double upper_edge_hz = 0.0;
    double bandwidth_hz = 0.0;
    double fractional_bandwidth = 0.0;  // relative to the layout's design frequency
    bool clipped_low = false;           // 1-dB span reached the band edge
    bool clipped_high = false;
    bool degenerate = false;            // single-point band
};

/// Gain versus frequency with the codeword held fixed. Throws DomainError
/// when the band leaves the measured model's validity range.
SweepResult frequency_sweep(const SurfaceLayout& layout, const Codeword& codeword, double f_low_hz,
                            double f_high_hz, double step_hz, const PatternOptions& options = {});

struct ScanPoint {
    SteeringTarget commanded;
    double gain_dbi = 0.0;
    double scan_loss_db = 0.0;
    double peak_theta_deg = 0.0;
    double peak_phi_deg = 0.0;
};

/// Synthesizes, radiates and measures a pencil beam at each angle; scan loss
/// is relative to the broadside gain.
std::vector<ScanPoint> scan_study(const SurfaceLayout& layout, const std::vector<SteeringTarget>& angles,
                                  const PatternOptions& options = {});

struct QuantizationLoss {
    int bits = 0;               // 0 means continuous
    int trials = 0;
    double mean_loss_db = 0.0;  // positive numbers are losses
    double std_db = 0.0;
    double closed_form_db = 0.0;
};

/// -20 log10(sinc(pi / 2^bits)); 0 for continuous.
double quantization_loss_closed_form(int bits);

/// Monte-Carlo broadside gain loss of n-bit ideal quantization against
/// continuous phases, over per-trial uniform feed-phase offsets. Trial t uses
/// a seed derived from (seed, t) so results do not depend on evaluation order.
QuantizationLoss quantization_loss(int bits, int trials, std::uint64_t seed, const SurfaceLayout& layout);

/// Per-trial losses, exposed for paired comparisons across bit depths.
std::vector<double> quantization_loss_samples(int bits, int trials, std::uint64_t seed, const SurfaceLayout& layout);

inline double eirp(double transmit_power_dbm, double gain_dbi) { return transmit_power_dbm + gain_dbi; }

/// CSV: header "theta,phi,re,im,mag_db", one row per grid point.
std::string pattern_to_csv(const FarFieldPattern& pattern);

/// Flat "key = value" lines.
std::string metrics_to_text(const PatternMetrics& m, const GainBreakdown& g);

}  // namespace ris
