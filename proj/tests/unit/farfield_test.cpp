// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ristwin/errors.hpp"
#include "ristwin/farfield.hpp"
#include "ristwin/synthesis.hpp"
#include "ristwin/units.hpp"

using namespace ris;

namespace {

constexpr double kF = 2.3e9;

double aperture_bound_dbi(double area, double f) {
    const double lambda = 299'792'458.0 / f;
    return 10.0 * std::log10(4.0 * std::numbers::pi * area / (lambda * lambda));
}

SurfaceLayout unmasked() {
    SurfaceLayout l;
    l.mask.clear();
    return l;
}

// Shared default broadside pattern; radiating is cheap but not free.
const FarFieldPattern& broadside() {
    static const FarFieldPattern p = [] {
        const SurfaceLayout l;
        return radiate(l, synthesize_pencil(l, {}, ElementModelKind::Measured), kF, AngleGrid::hemisphere(),
                       ElementModelKind::Measured);
    }();
    return p;
}

}  // namespace

TEST(Radiate, SingleElementMagnitudeIndependentOfState) {
    SurfaceLayout l;
    l.rows = 1;
    l.cols = 1;
    l.mask.clear();
    const AngleGrid g = AngleGrid::hemisphere(5.0, 5.0);
    double first = -1.0;
    for (int code = 0; code < 4; ++code) {
        const auto pat = radiate(l, Codeword::uniform(l, code), kF, g, ElementModelKind::Ideal);
        const double m = std::abs(pat.at(0, 0));
        const cplx expected = feed_illumination(l, 0, 0, kF) * std::polar(1.0, code * std::numbers::pi / 2.0);
        EXPECT_NEAR(std::abs(pat.at(0, 0) - expected), 0.0, 1e-12 * std::abs(expected));
        if (first < 0) first = m;
        EXPECT_NEAR(m, first, 1e-12 * first);
    }
}

TEST(Radiate, OppositeStatesCancelAtBroadside) {
    SurfaceLayout l;
    l.rows = 1;
    l.cols = 2;
    l.mask.clear();
    Codeword cw = Codeword::uniform(l, 0);
    cw.set(0, 1, ElementState::from_code(2));
    EXPECT_NEAR(std::abs(field_at(l, element_excitations(l, cw, kF, ElementModelKind::Ideal), kF, 0.0, 0.0)), 0.0, 1e-15);
}

TEST(Radiate, RecurrenceMatchesDirectSum) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {25.0, 40.0}, ElementModelKind::Measured);
    const auto exc = element_excitations(l, cw, kF, ElementModelKind::Measured);
    const AngleGrid g = AngleGrid::hemisphere(7.5, 10.0);
    const auto pat = radiate(l, cw, kF, g, ElementModelKind::Measured);
    for (std::size_t it = 0; it < g.theta_deg.size(); ++it) {
        for (std::size_t ip = 0; ip < g.phi_deg.size(); ++ip) {
            const cplx direct = field_at(l, exc, kF, g.theta_deg[it], g.phi_deg[ip]);
            EXPECT_NEAR(std::abs(pat.at(it, ip) - direct), 0.0, 1e-9 * (1.0 + std::abs(direct)));
        }
    }
}

TEST(Radiate, BroadsidePeakAtZenith) {
    const Directivity d = directivity(broadside());
    EXPECT_LE(d.theta_deg, 0.5);
}

TEST(Directivity, IsotropicHemisphere) {
    FarFieldPattern p;
    p.grid = AngleGrid::hemisphere(0.5, 0.5);
    p.field.assign(p.grid.size(), cplx(1.0, 0.0));
    p.frequency_hz = kF;
    EXPECT_NEAR(directivity(p).dbi, 10.0 * std::log10(2.0), 1e-3);
}

TEST(Directivity, ZeroPatternRejected) {
    FarFieldPattern p;
    p.grid = AngleGrid::hemisphere(1.0, 1.0);
    p.field.assign(p.grid.size(), cplx(0.0, 0.0));
    EXPECT_THROW(directivity(p), DomainError);
}

TEST(Directivity, BelowApertureBound) {
    const SurfaceLayout l;
    const double d = directivity(broadside()).dbi;
    EXPECT_LE(d, aperture_bound_dbi(0.64, kF));
    EXPECT_NEAR(aperture_bound_dbi(0.64, kF), 26.75, 0.01);
}

TEST(Directivity, QuadratureConverges) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {30.0, 45.0}, ElementModelKind::Measured);
    const double coarse = directivity(radiate(l, cw, kF, AngleGrid::hemisphere(0.5, 0.5), ElementModelKind::Measured)).dbi;
    const double fine = directivity(radiate(l, cw, kF, AngleGrid::hemisphere(0.25, 0.25), ElementModelKind::Measured)).dbi;
    EXPECT_LT(std::abs(coarse - fine), 0.05);
}

TEST(Gain, IdealWithoutSpilloverEqualsDirectivity) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {}, ElementModelKind::Ideal);
    const auto pat = radiate(l, cw, kF, AngleGrid::hemisphere(1.0, 1.0), ElementModelKind::Ideal);
    const GainBreakdown g = gain(pat, l, cw, ElementModelKind::Ideal, false);
    EXPECT_NEAR(g.gain_dbi, g.directivity_dbi, 1e-12);
    EXPECT_NEAR(g.element_loss_db, 0.0, 1e-12);
}

TEST(Gain, AllConfigThreeLossIsTableMagnitude) {
    const SurfaceLayout l;
    const Codeword cw = Codeword::uniform(l, ElementState::from_configuration(3).code());
    EXPECT_NEAR(element_loss_db(l, cw, kF, ElementModelKind::Measured), -0.8, 1e-12);
}

TEST(Gain, OrderingAndSpilloverBookkeeping) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {}, ElementModelKind::Measured);
    const GainBreakdown g = gain(broadside(), l, cw, ElementModelKind::Measured);
    EXPECT_LE(g.gain_dbi, g.directivity_dbi);
    EXPECT_LE(g.spillover_db, 0.0);
    EXPECT_LE(g.element_loss_db, 0.0);
    EXPECT_NEAR(g.gain_with_spillover_dbi, g.gain_without_spillover_dbi + g.spillover_db, 1e-12);
    EXPECT_NEAR(g.gain_dbi, g.gain_with_spillover_dbi, 1e-12);
    const GainBreakdown off = gain(broadside(), l, cw, ElementModelKind::Measured, false);
    EXPECT_NEAR(off.gain_dbi, g.gain_without_spillover_dbi, 1e-12);
}

TEST(Gain, SpilloverMatchesCoarseQuadrature) {
    // Fraction of cos^(2 q_f) feed power (over the forward hemisphere) that
    // hits the square aperture, by an independent polar-grid quadrature.
    const SurfaceLayout l;
    const double q = l.feed_exponent, h = l.feed_position.z, half = 0.4;
    double hit = 0.0, total = 0.0;
    const int nt = 2000, np = 720;
    for (int i = 0; i < nt; ++i) {
        const double t = (i + 0.5) * (std::numbers::pi / 2) / nt;
        const double w = std::pow(std::cos(t), 2 * q) * std::sin(t);
        for (int j = 0; j < np; ++j) {
            const double p = (j + 0.5) * 2 * std::numbers::pi / np;
            total += w;
            const double r = h * std::tan(t);
            if (std::abs(r * std::cos(p)) <= half && std::abs(r * std::sin(p)) <= half) hit += w;
        }
    }
    EXPECT_NEAR(spillover_efficiency(l), hit / total, 2e-3);
}

TEST(Metrics, UniformApertureClosedForms) {
    const SurfaceLayout l = unmasked();
    const std::vector<cplx> ones(l.element_count(), cplx(1.0, 0.0));
    const auto pat = radiate_excitations(l, ones, kF, AngleGrid::hemisphere(0.5, 0.5));
    const PatternMetrics m = metrics(pat, l);
    const double lambda = 299'792'458.0 / kF;
    const double hpbw = 0.886 * lambda / 0.8 * 180.0 / std::numbers::pi;
    EXPECT_NEAR(m.hpbw_deg[0], hpbw, 0.2);
    EXPECT_NEAR(m.hpbw_deg[1], hpbw, 0.2);
    EXPECT_NEAR(m.sll_db[0], -13.26, 0.3);
    EXPECT_NEAR(m.sll_db[1], -13.26, 0.3);
    EXPECT_TRUE(m.valid);
}

TEST(Metrics, DefaultBroadsideNearMeasuredBeamwidths) {
    const SurfaceLayout l;
    const PatternMetrics m = metrics(broadside(), l);
    EXPECT_NEAR(m.hpbw_deg[0], 9.1, 1.5);
    EXPECT_NEAR(m.hpbw_deg[1], 8.8, 1.5);
    EXPECT_LT(m.sll_db_max, 0.0);
}

TEST(Metrics, ScaleInvariance) {
    const SurfaceLayout l;
    FarFieldPattern scaled = broadside();
    for (auto& e : scaled.field) e *= cplx(3.7, -1.2);
    const PatternMetrics a = metrics(broadside(), l);
    const PatternMetrics b = metrics(scaled, l);
    EXPECT_NEAR(a.directivity_dbi, b.directivity_dbi, 1e-9);
    EXPECT_NEAR(a.hpbw_deg[0], b.hpbw_deg[0], 1e-9);
    EXPECT_NEAR(a.hpbw_deg[1], b.hpbw_deg[1], 1e-9);
    EXPECT_NEAR(a.sll_db_max, b.sll_db_max, 1e-9);
    EXPECT_EQ(a.peak_theta_deg, b.peak_theta_deg);
    EXPECT_EQ(a.peak_phi_deg, b.peak_phi_deg);
}

TEST(Metrics, ReciprocityOfSteering) {
    // On a symmetric unmasked layout the beams toward (theta, phi) and
    // (theta, phi + 180) are point mirrors: |E(t, p)| = |E'(t, p + 180)|.
    const SurfaceLayout l = unmasked();
    const AngleGrid g = AngleGrid::hemisphere(1.0, 1.0);
    const auto a = radiate(l, synthesize_pencil(l, {30.0, 20.0}, ElementModelKind::Ideal), kF, g, ElementModelKind::Ideal);
    const auto b = radiate(l, synthesize_pencil(l, {30.0, 200.0}, ElementModelKind::Ideal), kF, g, ElementModelKind::Ideal);
    const std::size_t np = g.phi_deg.size();
    double worst = 0.0, peak = 0.0;
    for (std::size_t it = 0; it < g.theta_deg.size(); ++it) {
        for (std::size_t ip = 0; ip < np; ++ip) {
            peak = std::max(peak, std::abs(a.at(it, ip)));
            worst = std::max(worst, std::abs(std::abs(a.at(it, ip)) - std::abs(b.at(it, (ip + 180) % np))));
        }
    }
    EXPECT_LT(worst, 1e-9 * peak);
}

TEST(ApertureEfficiency, Identities) {
    EXPECT_NEAR(aperture_efficiency(21.7, 0.64, kF), 0.313, 0.002);
    EXPECT_NEAR(aperture_efficiency(aperture_bound_dbi(0.64, kF), 0.64, kF), 1.0, 1e-12);
    EXPECT_NEAR(aperture_efficiency(18.0, 0.64, kF), 0.134, 0.001);
}

TEST(Eirp, Sums) {
    EXPECT_DOUBLE_EQ(eirp(30.0, 21.7), 51.7);
    EXPECT_DOUBLE_EQ(eirp(12.5, 0.0), 12.5);
    EXPECT_DOUBLE_EQ(eirp(30.0, 19.1), 49.1);
}

TEST(FrequencySweep, DesignFrequencyNearMaximum) {
    const SurfaceLayout l;
    PatternOptions o;
    o.theta_step_deg = 1.0;
    o.phi_step_deg = 1.0;
    const Codeword cw = synthesize_pencil(l, {}, ElementModelKind::Measured);
    const SweepResult r = frequency_sweep(l, cw, 2.0e9, 2.6e9, 50e6, o);
    double at_design = 0.0;
    for (const auto& p : r.points)
        if (std::abs(p.frequency_hz - kF) < 1.0) at_design = p.gain_dbi;
    EXPECT_LE(r.peak_gain_dbi - at_design, 0.3);
    EXPECT_GE(r.fractional_bandwidth, 0.10);
}

TEST(FrequencySweep, DegenerateAndOutOfBand) {
    const SurfaceLayout l;
    PatternOptions o;
    o.theta_step_deg = 1.0;
    o.phi_step_deg = 1.0;
    const Codeword cw = synthesize_pencil(l, {}, ElementModelKind::Measured);
    const SweepResult r = frequency_sweep(l, cw, kF, kF, 10e6, o);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.bandwidth_hz, 0.0);
    EXPECT_THROW(frequency_sweep(l, cw, 1.9e9, 2.4e9, 10e6, o), DomainError);
}

TEST(ScanStudy, LossAndPointing) {
    const SurfaceLayout l;
    const auto pts = scan_study(l, {{0, 0}, {20, 0}, {40, 0}, {60, 0}});
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_NEAR(pts[0].scan_loss_db, 0.0, 1e-12);
    EXPECT_GE(pts[3].scan_loss_db, 2.2);
    EXPECT_LE(pts[3].scan_loss_db, 5.2);
    for (const auto& p : pts) EXPECT_LE(std::abs(p.peak_theta_deg - p.commanded.theta_deg), 0.5) << p.commanded.theta_deg;
}

TEST(QuantizationLoss, ClosedFormsAndOrdering) {
    EXPECT_NEAR(quantization_loss_closed_form(2), 0.912, 0.001);
    EXPECT_NEAR(quantization_loss_closed_form(1), 3.922, 0.001);
    EXPECT_EQ(quantization_loss_closed_form(0), 0.0);
    const SurfaceLayout l;
    const QuantizationLoss cont = quantization_loss(0, 200, 1, l);
    EXPECT_NEAR(cont.mean_loss_db, 0.0, 1e-9);
    const QuantizationLoss two = quantization_loss(2, 2000, 42, l);
    const QuantizationLoss one = quantization_loss(1, 2000, 42, l);
    EXPECT_NEAR(two.mean_loss_db, 0.91, 0.3);
    EXPECT_GE(one.mean_loss_db, 3.0);
    EXPECT_LT(two.mean_loss_db, one.mean_loss_db);
    EXPECT_THROW(quantization_loss(2, 10, 1, l), DomainError);
}

TEST(QuantizationLoss, ReproducibleRegardlessOfOrder) {
    const SurfaceLayout l;
    const auto a = quantization_loss_samples(2, 300, 77, l);
    const auto b = quantization_loss_samples(2, 300, 77, l);
    EXPECT_EQ(a, b);
}

TEST(PatternCsv, HeaderAndRowCount) {
    SurfaceLayout l;
    l.rows = 2;
    l.cols = 2;
    l.mask.clear();
    const auto pat = radiate(l, Codeword::uniform(l, 0), kF, AngleGrid::hemisphere(30.0, 90.0), ElementModelKind::Ideal);
    const std::string csv = pattern_to_csv(pat);
    EXPECT_EQ(csv.rfind("theta,phi,re,im,mag_db\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 1 + pat.grid.size());
}
