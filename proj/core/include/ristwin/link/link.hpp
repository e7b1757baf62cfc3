// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ristwin/link/channel.hpp"
#include "ristwin/link/coding.hpp"
#include "ristwin/link/frame.hpp"
#include "ristwin/link/modulation.hpp"
#include "ristwin/link/ofdm.hpp"
#include "ristwin/surface.hpp"

namespace ris::link {

enum class DecoderInput { Soft, Hard };

std::string to_string(DecoderInput d);
DecoderInput parse_decoder_input(const std::string& text);

struct LinkConfig {
    OfdmNumerology numerology{};
    Modulation modulation = Modulation::Qpsk;
    CoderSpec coder = CoderSpec::convolutional();
    int interleaver_rows = 32;
    int interleaver_cols = 64;
    int data_symbols_per_frame = 14;
    ChannelConfig channel{};
    DecoderInput decoder_input = DecoderInput::Soft;

    /// Throws ConfigError; checks that one interleaver block fits a frame.
    void validate() const;
    FrameFormat frame_format() const { return {numerology, modulation, data_symbols_per_frame}; }
    /// Information bits carried by one full frame.
    std::size_t info_bits_per_frame() const;
    /// Data cells x bits/symbol x code rate per OFDM symbol period (CP included).
    double data_rate_bps() const;
};

struct LinkReport {
    double raw_ber = 0.0;
    double coded_ber = 0.0;
    double evm_db = 0.0;
    double rate_bps = 0.0;
    double received_power_dbm = 0.0;
    double snr_db = 0.0;
    double ris_gain_dbi = 0.0;
    std::size_t frames = 0;
    std::size_t info_bits = 0;
    std::size_t raw_bits = 0;
    std::size_t raw_errors = 0;
    std::size_t coded_errors = 0;
    double cfo_estimate = 0.0;  // last frame, subcarrier spacings
    long timing_error = 0;      // last frame, samples (estimate - truth)

    bool operator==(const LinkReport&) const = default;
};

/// Deterministic pseudo-random payload.
std::vector<std::uint8_t> random_payload(std::size_t bits, std::uint64_t seed);

/// Runs encoder -> interleaver -> mapper -> framer -> channel -> sync ->
/// CFO correction -> OFDM demodulation -> estimation -> equalization ->
/// demapper -> deinterleaver -> decoder, one frame at a time. Frame i uses
/// a channel seed derived from (seed, i). Failures are rethrown as
/// StageError tagged with the stage name.
LinkReport run_link(const LinkConfig& config, std::span<const std::uint8_t> payload,
                    const SurfaceLayout* layout = nullptr, const Codeword* codeword = nullptr);

std::string report_to_text(const LinkReport& r);

struct SnrPoint {
    double snr_db = 0.0;
    LinkReport report;
};

/// One run_link per SNR value (noise mode forced to Snr), in parallel.
std::vector<SnrPoint> snr_sweep(const LinkConfig& config, std::span<const double> snr_db,
                                std::span<const std::uint8_t> payload, const SurfaceLayout* layout = nullptr,
                                const Codeword* codeword = nullptr);

/// Header `snr_db,raw_ber,coded_ber,evm_db`.
std::string sweep_to_csv(const std::vector<SnrPoint>& points);

/// Closed-form uncoded Gray-QAM bit error rate on AWGN at the given Es/N0.
double awgn_ber(Modulation m, double es_n0_db);

}  // namespace ris::link
