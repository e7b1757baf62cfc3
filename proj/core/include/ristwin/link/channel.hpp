// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ristwin/link/ofdm.hpp"
#include "ristwin/surface.hpp"

namespace ris::link {

enum class NoiseMode { None, Snr, NoiseFigure };

std::string to_string(NoiseMode m);
NoiseMode parse_noise_mode(const std::string& text);

/// Single-tap line-of-sight channel via the surface, plus impairments.
struct ChannelConfig {
    double carrier_hz = 2.3e9;
    double tx_power_dbm = 30.0;
    double distance_m = 20.0;
    double rx_gain_dbi = 0.0;
    /// Receiver direction seen from the surface.
    double rx_theta_deg = 0.0;
    double rx_phi_deg = 0.0;
    /// Bypasses the far-field computation when set.
    std::optional<double> ris_gain_dbi;
    NoiseMode noise = NoiseMode::Snr;
    double snr_db = 30.0;        // per used subcarrier
    double noise_figure_db = 7.0;
    double cfo_subcarriers = 0.0;
    int timing_offset = 0;       // zero samples prepended
    double channel_phase_deg = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

double free_space_path_loss_db(double distance_m, double frequency_hz);

/// EIRP toward the receiver plus receive gain minus free-space loss.
double received_power_dbm(double tx_power_dbm, double ris_gain_dbi, double rx_gain_dbi, double distance_m,
                          double frequency_hz);

/// Measured-model pencil beam at broadside, element table anchored at the
/// layout's design frequency.
Codeword broadside_codeword(const SurfaceLayout& layout);

/// Gain of `codeword` toward (theta, phi), including element and spillover
/// losses: peak gain minus the pattern drop from peak to that direction.
double ris_gain_toward(const SurfaceLayout& layout, const Codeword& codeword, double theta_deg, double phi_deg);

struct ChannelOutput {
    std::vector<cplx> samples;
    cplx gain;                    // complex amplitude gain applied to the unit-power stream
    double ris_gain_dbi = 0.0;
    double received_power_dbm = 0.0;
    double noise_variance = 0.0;  // per time sample, same units as |samples|^2
    double snr_db = 0.0;          // per used subcarrier; +inf without noise
};

/// `stream` is a unit-power-per-used-subcarrier baseband stream (as produced
/// by build_frame). The transmit scaling maps it to `tx_power_dbm` in watts.
/// Layout and codeword default to the broadside pencil beam when absent.
ChannelOutput apply_channel(std::span<const cplx> stream, const ChannelConfig& config, const OfdmNumerology& num,
                            const SurfaceLayout* layout = nullptr, const Codeword* codeword = nullptr);

}  // namespace ris::link
