// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ristwin/errors.hpp"
#include "ristwin/farfield.hpp"
#include "ristwin/link/channel.hpp"
#include "ristwin/link/frame.hpp"
#include "ristwin/link/link.hpp"

using namespace ris;
using namespace ris::link;

namespace {

LinkConfig quiet(Modulation m, CoderSpec coder = CoderSpec::convolutional()) {
    LinkConfig c;
    c.modulation = m;
    c.coder = coder;
    c.channel.noise = NoiseMode::None;
    c.channel.ris_gain_dbi = 21.7;
    return c;
}

}  // namespace

TEST(Channel, FreeSpaceLoss) {
    const double lambda = 299'792'458.0 / 2.3e9;
    EXPECT_NEAR(free_space_path_loss_db(20.0, 2.3e9), 20.0 * std::log10(4.0 * std::numbers::pi * 20.0 / lambda), 1e-12);
    EXPECT_NEAR(free_space_path_loss_db(20.0, 2.3e9), 65.7, 0.1);
    EXPECT_THROW(free_space_path_loss_db(0.0, 2.3e9), DomainError);
}

TEST(Channel, BudgetChainsEirp) {
    EXPECT_NEAR(received_power_dbm(30.0, 21.7, 0.0, 20.0, 2.3e9), 51.7 - 65.7, 0.1);
}

TEST(Channel, NoiselessIsConstantGain) {
    FrameFormat f;
    const Frame fr = build_frame(random_payload(3000, 1), f);
    ChannelConfig c;
    c.noise = NoiseMode::None;
    c.ris_gain_dbi = 21.7;
    c.channel_phase_deg = 33.0;
    const ChannelOutput out = apply_channel(fr.samples, c, f.numerology);
    ASSERT_EQ(out.samples.size(), fr.samples.size());
    for (std::size_t i = 0; i < fr.samples.size(); ++i)
        ASSERT_NEAR(std::abs(out.samples[i] - out.gain * fr.samples[i]), 0.0, 1e-15 * (1.0 + std::abs(out.gain)));
    EXPECT_NEAR(std::arg(out.gain) * 180.0 / std::numbers::pi, 33.0, 1e-9);
    EXPECT_NEAR(out.received_power_dbm, 30.0 + 21.7 - free_space_path_loss_db(20.0, 2.3e9), 1e-9);
}

TEST(Channel, TransmitScalingMeetsPowerBudget) {
    // Mean power over the useful parts equals the received power in watts.
    FrameFormat f;
    const Frame fr = build_frame(random_payload(f.capacity_bits(), 1), f);
    ChannelConfig c;
    c.noise = NoiseMode::None;
    c.ris_gain_dbi = 21.7;
    const ChannelOutput out = apply_channel(fr.samples, c, f.numerology);
    double p = 0.0;
    for (auto v : out.samples) p += std::norm(v);
    p /= static_cast<double>(out.samples.size());
    EXPECT_NEAR(10.0 * std::log10(p) + 30.0, out.received_power_dbm, 0.05);
}

TEST(Channel, SeededNoiseAndErrors) {
    FrameFormat f;
    const Frame fr = build_frame(random_payload(3000, 1), f);
    ChannelConfig c;
    c.ris_gain_dbi = 20.0;
    c.timing_offset = 17;
    const auto a = apply_channel(fr.samples, c, f.numerology);
    const auto b = apply_channel(fr.samples, c, f.numerology);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.samples.size(), fr.samples.size() + 17);
    c.seed = 2;
    EXPECT_NE(apply_channel(fr.samples, c, f.numerology).samples, a.samples);
    c.distance_m = 0.0;
    EXPECT_THROW(apply_channel(fr.samples, c, f.numerology), DomainError);
}

TEST(Channel, NoiseFigureModeSnr) {
    FrameFormat f;
    const Frame fr = build_frame(random_payload(3000, 1), f);
    ChannelConfig c;
    c.noise = NoiseMode::NoiseFigure;
    c.noise_figure_db = 7.0;
    c.ris_gain_dbi = 21.7;
    const auto out = apply_channel(fr.samples, c, f.numerology);
    // kT B_sc NF per used subcarrier, against the received power spread over 1200 subcarriers.
    const double n_dbm = -174.0 + 10.0 * std::log10(15e3) + 7.0;
    const double expected = out.received_power_dbm - 10.0 * std::log10(1200.0) - n_dbm;
    EXPECT_NEAR(out.snr_db, expected, 0.05);
}

TEST(Channel, GainTowardReceiverFromPattern) {
    const SurfaceLayout l;
    const Codeword cw = broadside_codeword(l);
    const double toward = ris_gain_toward(l, cw, 0.0, 0.0);
    const auto pat = radiate(l, cw, 2.3e9, AngleGrid::hemisphere(), ElementModelKind::Measured);
    EXPECT_NEAR(toward, gain(pat, l, cw, ElementModelKind::Measured).gain_dbi, 1e-9);
    EXPECT_LT(ris_gain_toward(l, cw, 20.0, 0.0), toward - 10.0);
}

TEST(Link, NoiselessLoopbackAllModulations) {
    for (auto m : {Modulation::Qpsk, Modulation::Qam16, Modulation::Qam64}) {
        for (auto coder : {CoderSpec::none(), CoderSpec::convolutional()}) {
            const auto payload = random_payload(30000, 3);
            const LinkReport r = run_link(quiet(m, coder), payload);
            EXPECT_EQ(r.raw_errors, 0u) << to_string(m) << " " << coder.describe();
            EXPECT_EQ(r.coded_errors, 0u) << to_string(m) << " " << coder.describe();
            EXPECT_LT(r.evm_db, -80.0);
        }
    }
}

TEST(Link, ImpairedLoopbackWithOffsets) {
    LinkConfig c = quiet(Modulation::Qam16);
    c.channel.noise = NoiseMode::Snr;
    c.channel.snr_db = 25.0;
    c.channel.cfo_subcarriers = 0.1;
    c.channel.timing_offset = 333;
    const LinkReport r = run_link(c, random_payload(40000, 4));
    EXPECT_EQ(r.coded_errors, 0u);
    EXPECT_NEAR(r.cfo_estimate, 0.1, 0.01);
    EXPECT_LE(std::abs(r.timing_error), 10);
}

TEST(Link, DeterministicReport) {
    LinkConfig c = quiet(Modulation::Qpsk);
    c.channel.noise = NoiseMode::Snr;
    c.channel.snr_db = 3.0;
    const auto payload = random_payload(20000, 5);
    EXPECT_EQ(run_link(c, payload), run_link(c, payload));
}

TEST(Link, RateAccountingExact) {
    for (auto m : {Modulation::Qpsk, Modulation::Qam16, Modulation::Qam64}) {
        for (auto coder : {CoderSpec::none(), CoderSpec::convolutional(), CoderSpec::convolutional(3, 7)}) {
            LinkConfig c = quiet(m, coder);
            const double t_sym = (2048.0 + 144.0) / 30.72e6;
            const double expected = 1200.0 * (1000.0 / 1200.0) * bits_per_symbol(m) * coder.rate() / t_sym;
            const LinkReport r = run_link(c, random_payload(5000, 1));
            EXPECT_DOUBLE_EQ(r.rate_bps, expected);
        }
    }
}

TEST(Link, CodedBeatsRawQpskTwoDb) {
    LinkConfig c = quiet(Modulation::Qpsk);
    c.channel.noise = NoiseMode::Snr;
    c.channel.snr_db = 2.0;
    const LinkReport r = run_link(c, random_payload(100000, 6));
    EXPECT_GT(r.raw_ber, 0.01);
    EXPECT_LT(r.coded_ber, r.raw_ber);
}

TEST(Link, RawBerMonotoneInSnr) {
    LinkConfig c = quiet(Modulation::Qpsk, CoderSpec::none());
    const double snrs[] = {0.0, 5.0, 10.0, 15.0, 20.0};
    const auto pts = snr_sweep(c, snrs, random_payload(100000, 7));
    ASSERT_EQ(pts.size(), 5u);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i].report.raw_ber, pts[i - 1].report.raw_ber) << i;
    const std::string csv = sweep_to_csv(pts);
    EXPECT_EQ(csv.rfind("snr_db,raw_ber,coded_ber,evm_db\n", 0), 0u);
}

TEST(Link, StageTaggedErrors) {
    LinkConfig c = quiet(Modulation::Qpsk);
    c.channel.distance_m = -1.0;
    try {
        run_link(c, random_payload(100, 1));
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "config");
    }
    LinkConfig big = quiet(Modulation::Qpsk);
    big.interleaver_rows = 1000;
    big.interleaver_cols = 1000;
    EXPECT_THROW(run_link(big, random_payload(100, 1)), StageError);
    // Noise only: no preamble above the detection threshold.
    LinkConfig lost = quiet(Modulation::Qpsk);
    lost.channel.noise = NoiseMode::Snr;
    lost.channel.snr_db = -30.0;
    try {
        run_link(lost, random_payload(1000, 1));
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "sync");
    }
}

TEST(Link, ReportText) {
    const LinkReport r = run_link(quiet(Modulation::Qpsk), random_payload(1000, 1));
    const std::string t = report_to_text(r);
    for (const char* key : {"raw_ber = ", "coded_ber = ", "evm_db = ", "rate_bps = ", "received_power_dbm = ", "snr_db = "})
        EXPECT_NE(t.find(key), std::string::npos) << key;
}
