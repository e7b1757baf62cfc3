// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "ristwin/element.hpp"
#include "ristwin/errors.hpp"
#include "ristwin/units.hpp"

using namespace ris;

namespace {

// Independent series-circuit arithmetic.
std::complex<double> series_on(double f) { return {0.8, 2.0 * std::numbers::pi * f * 780e-12}; }
std::complex<double> series_off(double f) {
    const double w = 2.0 * std::numbers::pi * f;
    return {10.0, w * 780e-12 - 1.0 / (w * 202e-15)};
}

double circular_diff(double a, double b) {
    double d = std::fmod(a - b, 360.0);
    if (d < 0) d += 360.0;
    return d;
}

}  // namespace

TEST(PinImpedance, OnStateAtDesignFrequency) {
    const auto z = pin_impedance(PinDiodeModel{}, DiodeState::On, 2.3e9);
    EXPECT_NEAR(z.real(), 0.8, 1e-12);
    EXPECT_NEAR(z.imag(), 11.27, 0.005);
    EXPECT_NEAR(std::abs(z - series_on(2.3e9)), 0.0, 1e-9);
}

TEST(PinImpedance, OffStateAtDesignFrequency) {
    const auto z = pin_impedance(PinDiodeModel{}, DiodeState::Off, 2.3e9);
    EXPECT_NEAR(z.real(), 10.0, 1e-12);
    EXPECT_NEAR(z.imag(), -331.3, 0.05);
    EXPECT_NEAR(std::abs(z - series_off(2.3e9)), 0.0, 1e-9);
}

TEST(PinImpedance, InductorVanishesTowardDc) {
    const auto z = pin_impedance(PinDiodeModel{}, DiodeState::On, 1.0);
    EXPECT_DOUBLE_EQ(z.real(), 0.8);
    EXPECT_LT(std::abs(z.imag()), 1e-8);
}

TEST(PinImpedance, RejectsNonPositiveFrequencyAndComponents) {
    EXPECT_THROW(pin_impedance(PinDiodeModel{}, DiodeState::On, 0.0), DomainError);
    EXPECT_THROW(pin_impedance(PinDiodeModel{}, DiodeState::Off, -1.0), DomainError);
    PinDiodeModel bad;
    bad.c_off = 0.0;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(ElementState, CodeToConfigurationMapping) {
    EXPECT_EQ(ElementState::from_code(0).configuration(), 3);
    EXPECT_EQ(ElementState::from_code(1).configuration(), 1);
    EXPECT_EQ(ElementState::from_code(2).configuration(), 4);
    EXPECT_EQ(ElementState::from_code(3).configuration(), 2);
    for (int c = 1; c <= 4; ++c) EXPECT_EQ(ElementState::from_configuration(c).configuration(), c);
    EXPECT_THROW(ElementState::from_code(4), DomainError);
    EXPECT_THROW(ElementState::from_configuration(0), DomainError);
    EXPECT_THROW(ElementState::masked().code(), DomainError);
}

TEST(StateToPins, TableRows) {
    using D = DiodeState;
    EXPECT_EQ(state_to_pins(ElementState::from_configuration(1)), (PinVector{D::On, D::Off, D::On, D::On, D::On}));
    EXPECT_EQ(state_to_pins(ElementState::from_configuration(2)), (PinVector{D::Off, D::On, D::On, D::On, D::On}));
    EXPECT_EQ(state_to_pins(ElementState::from_configuration(3)), (PinVector{D::On, D::Off, D::Off, D::Off, D::Off}));
    EXPECT_EQ(state_to_pins(ElementState::from_configuration(4)), (PinVector{D::Off, D::On, D::Off, D::Off, D::Off}));
    EXPECT_THROW(state_to_pins(ElementState::masked()), DomainError);
}

TEST(StateToPins, FirstTwoComplementaryAndAllDistinct) {
    std::set<PinVector> seen;
    for (int c = 0; c < 4; ++c) {
        const auto p = state_to_pins(ElementState::from_code(c));
        EXPECT_NE(p[0], p[1]);
        seen.insert(p);
    }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(ElementResponse, MeasuredMatchesTableVerbatim) {
    const ElementModel m;
    const double phase[4] = {-205.5, -383.2, -290.2, -110.3};
    const double mag[4] = {-1.1, -1.2, -0.8, -0.8};
    for (int c = 1; c <= 4; ++c) {
        const auto s = ElementState::from_configuration(c);
        EXPECT_DOUBLE_EQ(m.phase_deg(s, ElementModelKind::Measured), phase[c - 1]);
        EXPECT_DOUBLE_EQ(m.magnitude_db(s, ElementModelKind::Measured), mag[c - 1]);
        const auto g = element_response(s, 2.3e9, ElementModelKind::Measured);
        EXPECT_NEAR(std::abs(g), std::pow(10.0, mag[c - 1] / 20.0), 1e-12);
        EXPECT_NEAR(std::abs(std::arg(g / std::polar(1.0, phase[c - 1] * std::numbers::pi / 180.0))), 0.0, 1e-12);
    }
}

TEST(ElementResponse, IdealIsUnitAtQuarterTurns) {
    for (int c = 0; c < 4; ++c) {
        const auto g = element_response(ElementState::from_code(c), 7.7e9, ElementModelKind::Ideal);
        EXPECT_NEAR(std::abs(g - std::polar(1.0, c * std::numbers::pi / 2.0)), 0.0, 1e-12);
    }
}

TEST(ElementResponse, PassiveEverywhereInBand) {
    for (double f = 2.0e9; f <= 2.6e9; f += 0.05e9) {
        for (int c = 0; c < 4; ++c) {
            for (auto kind : {ElementModelKind::Measured, ElementModelKind::Ideal}) {
                EXPECT_LE(std::abs(element_response(ElementState::from_code(c), f, kind)), 1.0 + 1e-15);
            }
        }
    }
}

TEST(ElementResponse, OutOfBandErrorNamesTheBand) {
    try {
        element_response(ElementState::from_code(0), 2.7e9, ElementModelKind::Measured);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("[2, 2.6] GHz"), std::string::npos) << msg;
    }
    EXPECT_NO_THROW(element_response(ElementState::from_code(0), 28e9, ElementModelKind::Ideal));
}

TEST(ElementResponse, CurrentReversalPairsNear180) {
    const ElementModel m;
    auto ph = [&](int c) { return m.phase_deg(ElementState::from_configuration(c), ElementModelKind::Measured); };
    EXPECT_NEAR(ph(1) - ph(2), 177.7, 1e-9);
    EXPECT_NEAR(ph(3) - ph(4), -179.9, 1e-9);
    EXPECT_LT(std::abs(std::abs(ph(1) - ph(2)) - 180.0), 3.0);
    EXPECT_LT(std::abs(std::abs(ph(3) - ph(4)) - 180.0), 3.0);
}

TEST(ElementResponse, ConsecutiveCodesAboutQuarterTurnApart) {
    const auto p = ElementModel{}.available_phases_deg(ElementModelKind::Measured);
    for (int c = 0; c < 4; ++c) {
        const double step = circular_diff(p[(c + 1) % 4], p[c]);
        EXPECT_GE(step, 84.0) << c;
        EXPECT_LE(step, 96.0) << c;
    }
}

TEST(ElementModel, RescaledBandFollowsReference) {
    const ElementModel m = ElementModel{}.rescaled_to(28.5e9);
    EXPECT_NEAR(m.band_low_hz(), 2.0e9 * 28.5 / 2.3, 1.0);
    EXPECT_NEAR(m.band_high_hz(), 2.6e9 * 28.5 / 2.3, 1.0);
    EXPECT_NO_THROW(m.response(ElementState::from_code(1), 28.5e9, ElementModelKind::Measured));
    EXPECT_THROW(m.response(ElementState::from_code(1), 2.3e9, ElementModelKind::Measured), DomainError);
}
