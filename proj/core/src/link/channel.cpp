// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ristwin/errors.hpp"
#include "ristwin/farfield.hpp"
#include "ristwin/synthesis.hpp"
#include "ristwin/units.hpp"

namespace ris::link {

std::string to_string(NoiseMode m) {
    switch (m) {
        case NoiseMode::None: return "none";
        case NoiseMode::Snr: return "snr";
        case NoiseMode::NoiseFigure: return "noise_figure";
    }
    return "?";
}

NoiseMode parse_noise_mode(const std::string& text) {
    if (text == "none") return NoiseMode::None;
    if (text == "snr") return NoiseMode::Snr;
    if (text == "noise_figure" || text == "nf") return NoiseMode::NoiseFigure;
    throw ConfigError("unknown noise mode '" + text + "' (expected none, snr or noise_figure)");
}

void ChannelConfig::validate() const {
    if (!(carrier_hz > 0.0)) throw ConfigError("channel: carrier frequency must be positive");
    if (!(distance_m > 0.0)) throw DomainError("channel: link distance must be positive");
    if (timing_offset < 0) throw ConfigError("channel: timing offset must be non-negative");
    if (!std::isfinite(snr_db)) throw ConfigError("channel: SNR must be finite");
    if (noise_figure_db < 0.0) throw ConfigError("channel: noise figure must be non-negative");
}

double free_space_path_loss_db(double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0)) throw DomainError("free-space loss: distance must be positive");
    if (!(frequency_hz > 0.0)) throw DomainError("free-space loss: frequency must be positive");
    return amplitude_to_db(4.0 * kPi * distance_m / wavelength(frequency_hz));
}

double received_power_dbm(double tx_power_dbm, double ris_gain_dbi, double rx_gain_dbi, double distance_m,
                          double frequency_hz) {
    return eirp(tx_power_dbm, ris_gain_dbi) + rx_gain_dbi - free_space_path_loss_db(distance_m, frequency_hz);
}

Codeword broadside_codeword(const SurfaceLayout& layout) {
    PencilOptions opts;
    opts.element = ElementModel{}.rescaled_to(layout.design_frequency);
    return synthesize_pencil(layout, SteeringTarget{}, ElementModelKind::Measured, opts);
}

double ris_gain_toward(const SurfaceLayout& layout, const Codeword& codeword, double theta_deg, double phi_deg) {
    const double f = layout.design_frequency;
    const auto kind = ElementModelKind::Measured;
    const ElementModel element = ElementModel{}.rescaled_to(f);
    const FarFieldPattern pattern = radiate(layout, codeword, f, AngleGrid::hemisphere(), kind, element);
    const GainBreakdown g = gain(pattern, layout, codeword, kind, true, element);
    const Directivity d = directivity(pattern);
    const double e_peak = std::abs(pattern.at(d.theta_index, d.phi_index));
    const auto exc = element_excitations(layout, codeword, f, kind, element);
    const double e_dir = std::abs(field_at(layout, exc, f, theta_deg, phi_deg));
    if (e_dir <= 0.0) return -std::numeric_limits<double>::infinity();
    return g.gain_dbi + amplitude_to_db(e_dir / e_peak);
}

ChannelOutput apply_channel(std::span<const cplx> stream, const ChannelConfig& config, const OfdmNumerology& num,
                            const SurfaceLayout* layout, const Codeword* codeword) {
    config.validate();
    num.validate();

    ChannelOutput out;
    if (config.ris_gain_dbi) {
        out.ris_gain_dbi = *config.ris_gain_dbi;
    } else {
        const SurfaceLayout default_layout{};
        const SurfaceLayout& lay = layout ? *layout : default_layout;
        if (codeword) {
            out.ris_gain_dbi = ris_gain_toward(lay, *codeword, config.rx_theta_deg, config.rx_phi_deg);
        } else {
            const Codeword cw = broadside_codeword(lay);
            out.ris_gain_dbi = ris_gain_toward(lay, cw, config.rx_theta_deg, config.rx_phi_deg);
        }
    }
    out.received_power_dbm =
        received_power_dbm(config.tx_power_dbm, out.ris_gain_dbi, config.rx_gain_dbi, config.distance_m, config.carrier_hz);

    // Unit power per used subcarrier means mean sample power used/N.
    const double n = num.fft_size;
    const double used = num.used_subcarriers;
    const double tx_w = db_to_power(config.tx_power_dbm - 30.0);
    const double tx_scale = std::sqrt(tx_w * n / used);
    const double path = db_to_amplitude(out.received_power_dbm - config.tx_power_dbm);
    out.gain = std::polar(tx_scale * path, deg_to_rad(config.channel_phase_deg));

    const double rx_w = db_to_power(out.received_power_dbm - 30.0);
    const double per_bin_signal = rx_w * n / used;
    switch (config.noise) {
        case NoiseMode::None:
            out.noise_variance = 0.0;
            out.snr_db = std::numeric_limits<double>::infinity();
            break;
        case NoiseMode::Snr:
            out.noise_variance = per_bin_signal / db_to_power(config.snr_db);
            out.snr_db = config.snr_db;
            break;
        case NoiseMode::NoiseFigure:
            out.noise_variance = kBoltzmann * kReferenceTemperature * num.sample_rate_hz() * db_to_power(config.noise_figure_db);
            out.snr_db = power_to_db(per_bin_signal / out.noise_variance);
            break;
    }

    const std::size_t offset = static_cast<std::size_t>(config.timing_offset);
    out.samples.assign(offset + stream.size(), cplx(0.0, 0.0));
    const double w = 2.0 * kPi * config.cfo_subcarriers / n;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const std::size_t t = offset + i;
        cplx v = out.gain * stream[i];
        if (config.cfo_subcarriers != 0.0) v *= std::polar(1.0, w * static_cast<double>(t));
        out.samples[t] = v;
    }
    if (out.noise_variance > 0.0) {
        std::mt19937_64 rng(config.seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(out.noise_variance / 2.0));
        for (cplx& s : out.samples) s += cplx(normal(rng), normal(rng));
    }
    return out;
}

}  // namespace ris::link
