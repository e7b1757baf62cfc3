// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ristwin/errors.hpp"
#include "ristwin/farfield.hpp"
#include "ristwin/synthesis.hpp"
#include "ristwin/units.hpp"

using namespace ris;

namespace {

constexpr double kC = 299'792'458.0;

double wrap(double d) {
    d = std::fmod(d, 360.0);
    return d < 0 ? d + 360.0 : d;
}

double k_of(double f) { return 2.0 * std::numbers::pi * f / kC; }

// Cells with |theta| <= half_width on a phi grid, theta-major.
ShapedBeamSpec flat_top(double half_width) {
    ShapedBeamSpec s;
    for (double t = 0.0; t <= half_width + 30.0; t += 1.0) s.theta_deg.push_back(t);
    for (double p = 0.0; p < 360.0; p += 15.0) s.phi_deg.push_back(p);
    for (double t : s.theta_deg) {
        for (std::size_t i = 0; i < s.phi_deg.size(); ++i) {
            s.target.push_back(t <= half_width ? 1.0 : 0.0);
            s.weight.push_back(t > half_width && t < half_width + 5.0 ? 0.0 : 1.0);
        }
    }
    return s;
}

// Peak-to-trough spread (dB) of |E| over theta in [0, half_width] on the phi=0 and phi=90 cuts.
double ripple_db(const SurfaceLayout& l, const Codeword& cw, double half_width) {
    const auto exc = element_excitations(l, cw, l.design_frequency, ElementModelKind::Ideal);
    double lo = 1e300, hi = 0.0;
    for (double p : {0.0, 90.0, 180.0, 270.0}) {
        for (double t = 0.0; t <= half_width; t += 0.5) {
            const double m = std::abs(field_at(l, exc, l.design_frequency, t, p));
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
    }
    return 20.0 * std::log10(hi / lo);
}

}  // namespace

TEST(RequiredPhase, MirrorSymmetricElementsAgreeAtBroadside) {
    const SurfaceLayout l;
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            if (l.is_masked(r, c) || l.is_masked(r, 15 - c) || l.is_masked(15 - r, c)) continue;
            EXPECT_NEAR(required_phase(l, r, c, {}, 2.3e9), required_phase(l, r, 15 - c, {}, 2.3e9), 1e-9);
            EXPECT_NEAR(required_phase(l, r, c, {}, 2.3e9), required_phase(l, 15 - r, c, {}, 2.3e9), 1e-9);
        }
    }
}

TEST(RequiredPhase, CornerElementHandEvaluation) {
    const SurfaceLayout l;
    const double d = std::sqrt(0.375 * 0.375 * 2 + 0.72 * 0.72);
    const double expected = wrap(k_of(2.3e9) * d * 180.0 / std::numbers::pi);
    EXPECT_NEAR(required_phase(l, 0, 0, {}, 2.3e9), expected, 1e-9);
}

TEST(RequiredPhase, SteeringDifferenceIsProgressive) {
    const SurfaceLayout l;
    for (int c : {8, 10, 15}) {
        const double x = element_position(l, 0, c).x;
        ASSERT_GT(x, 0.0);
        const double diff = wrap(required_phase(l, 0, c, {}, 2.3e9) - required_phase(l, 0, c, {30.0, 0.0}, 2.3e9));
        EXPECT_NEAR(diff, wrap(k_of(2.3e9) * x * 0.5 * 180.0 / std::numbers::pi), 1e-8) << c;
    }
}

TEST(RequiredPhase, ErrorsAndRange) {
    const SurfaceLayout l;
    const GridIndex m = *l.mask.begin();
    EXPECT_THROW(required_phase(l, m.row, m.col, {}, 2.3e9), DomainError);
    EXPECT_THROW(required_phase(l, 0, 0, {}, 0.0), DomainError);
    const auto all = required_phases(l, {20.0, 45.0});
    int nan = 0;
    for (double v : all) {
        if (std::isnan(v)) {
            ++nan;
            continue;
        }
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 360.0);
    }
    EXPECT_EQ(nan, 16);
}

TEST(RequiredPhase, SteeringLinearityAlongPhiZeroCut) {
    // On the phi = 0 cut the steering term is -k x sin(theta); the feed term
    // cancels for elements equidistant from the feed (c and 15 - c).
    SurfaceLayout l;
    l.mask.clear();
    const double k = k_of(2.3e9);
    for (double theta : {10.0, 35.0, 60.0}) {
        for (int c = 0; c < 8; ++c) {
            const double lhs = required_phase(l, 3, c, {theta, 0.0}, 2.3e9) - required_phase(l, 3, 15 - c, {theta, 0.0}, 2.3e9);
            const double dx = element_position(l, 3, 15 - c).x - element_position(l, 3, c).x;
            const double rhs = k * dx * std::sin(theta * std::numbers::pi / 180.0) * 180.0 / std::numbers::pi;
            EXPECT_NEAR(wrap(lhs - rhs + 180.0) - 180.0, 0.0, 1e-8);
        }
    }
}

TEST(QuantizePhase, NearestAndTieBreak) {
    const auto ideal = ideal_phase_set(2);
    auto q = quantize_phase(100.0, ideal);
    EXPECT_EQ(q.index, 1u);
    EXPECT_NEAR(q.error_deg, 10.0, 1e-12);
    q = quantize_phase(135.0, ideal);
    EXPECT_EQ(q.index, 1u);
    EXPECT_NEAR(q.error_deg, 45.0, 1e-12);
    q = quantize_phase(350.0, ideal);
    EXPECT_EQ(q.index, 0u);
    EXPECT_NEAR(q.error_deg, -10.0, 1e-12);
    EXPECT_THROW(quantize_phase(10.0, std::vector<double>{}), DomainError);
}

TEST(QuantizePhase, MonteCarloErrorStatistics) {
    const auto ideal = ideal_phase_set(2);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 360.0);
    double max_abs = 0.0, sum_abs = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        const double e = std::abs(quantize_phase(u(rng), ideal).error_deg);
        max_abs = std::max(max_abs, e);
        sum_abs += e;
    }
    EXPECT_LE(max_abs, 45.0);
    EXPECT_NEAR(sum_abs / n, 22.5, 0.1);
}

TEST(SynthesizePencil, IdealResidualsBoundedBy45) {
    const SurfaceLayout l;
    for (SteeringTarget t : {SteeringTarget{0, 0}, {20, 30}, {45, 200}, {60, 90}}) {
        const Codeword cw = synthesize_pencil(l, t, ElementModelKind::Ideal);
        for (double e : phase_residuals(l, cw, t, ElementModelKind::Ideal)) {
            if (!std::isnan(e)) {
                EXPECT_LE(std::abs(e), 45.0 + 1e-9);
            }
        }
    }
}

TEST(SynthesizePencil, BroadsideMirrorSymmetry) {
    SurfaceLayout l;
    l.mask.clear();
    for (auto kind : {ElementModelKind::Ideal, ElementModelKind::Measured}) {
        const Codeword cw = synthesize_pencil(l, {}, kind);
        for (int r = 0; r < 16; ++r) {
            for (int c = 0; c < 16; ++c) {
                EXPECT_EQ(cw.at(r, c), cw.at(r, 15 - c));
                EXPECT_EQ(cw.at(r, c), cw.at(15 - r, c));
                EXPECT_EQ(cw.at(r, c), cw.at(c, r));
            }
        }
    }
}

TEST(SynthesizePencil, BroadsideRequiredPhaseGrowsWithRadius) {
    // Ring structure: the unwrapped feed phase is monotone in radius.
    const SurfaceLayout l;
    const Vec3 feed = l.feed_position;
    double prev_r = -1.0, prev_d = -1.0;
    for (int c = 8; c < 16; ++c) {
        const Vec3 p = element_position(l, 8, c);
        const double r = std::hypot(p.x, p.y);
        const double d = norm(feed - p);
        EXPECT_GT(r, prev_r);
        EXPECT_GT(d, prev_d);
        prev_r = r;
        prev_d = d;
    }
}

TEST(SynthesizePencil, CommonPhaseOffsetOnlyRelabels) {
    // Rotating every available phase by the same angle changes which state is
    // nearest, but not the set of residual magnitudes once the required phase
    // is rotated by the same angle.
    const auto base = ideal_phase_set(2);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 360.0);
    for (int i = 0; i < 1000; ++i) {
        const double req = u(rng);
        const double off = u(rng);
        std::vector<double> shifted;
        for (double p : base) shifted.push_back(wrap(p + off));
        const auto a = quantize_phase(req, base);
        const auto b = quantize_phase(wrap(req + off), shifted);
        EXPECT_NEAR(a.error_deg, b.error_deg, 1e-9);
    }
}

TEST(SynthesizePencil, DeterministicAndScanLimit) {
    const SurfaceLayout l;
    EXPECT_EQ(synthesize_pencil(l, {30, 10}, ElementModelKind::Measured),
              synthesize_pencil(l, {30, 10}, ElementModelKind::Measured));
    EXPECT_THROW(synthesize_pencil(l, {61, 0}, ElementModelKind::Measured), DomainError);
    PencilOptions o;
    o.allow_beyond_scan_limit = true;
    EXPECT_NO_THROW(synthesize_pencil(l, {61, 0}, ElementModelKind::Measured, o));
    EXPECT_THROW(synthesize_pencil(l, {90, 0}, ElementModelKind::Measured, o), DomainError);
}

TEST(SynthesizeShaped, SinglePointMaskReproducesPencil) {
    const SurfaceLayout l;
    ShapedBeamSpec s;
    s.theta_deg = {0.0};
    s.phi_deg = {0.0};
    s.target = {1.0};
    s.weight = {1.0};
    for (auto kind : {ElementModelKind::Ideal, ElementModelKind::Measured}) {
        const ShapedResult r = synthesize_shaped(l, s, kind, 1);
        EXPECT_EQ(r.codeword, synthesize_pencil(l, {}, kind));
    }
}

TEST(SynthesizeShaped, ContinuousObjectiveNonIncreasing) {
    const SurfaceLayout l;
    const ShapedResult r = synthesize_shaped(l, flat_top(10.0), ElementModelKind::Ideal, 9);
    ASSERT_GE(r.continuous_objective.size(), 2u);
    for (std::size_t i = 1; i < r.continuous_objective.size(); ++i) {
        EXPECT_LE(r.continuous_objective[i], r.continuous_objective[i - 1] * (1.0 + 1e-12)) << i;
    }
}

TEST(SynthesizeShaped, FlatTopFlatterThanPencil) {
    const SurfaceLayout l;
    const ShapedResult r = synthesize_shaped(l, flat_top(10.0), ElementModelKind::Ideal, 4);
    const Codeword pencil = synthesize_pencil(l, {}, ElementModelKind::Ideal);
    const double shaped = ripple_db(l, r.codeword, 10.0);
    const double rolloff = ripple_db(l, pencil, 10.0);
    EXPECT_LT(shaped, rolloff) << "shaped " << shaped << " dB, pencil " << rolloff << " dB";
}

TEST(SynthesizeShaped, DeterministicForSeed) {
    const SurfaceLayout l;
    const auto a = synthesize_shaped(l, flat_top(8.0), ElementModelKind::Measured, 21);
    const auto b = synthesize_shaped(l, flat_top(8.0), ElementModelKind::Measured, 21);
    EXPECT_EQ(a.codeword, b.codeword);
    EXPECT_EQ(a.final_objective, b.final_objective);
}

TEST(SynthesizeShaped, SpecValidation) {
    ShapedBeamSpec s = flat_top(5.0);
    s.weight.pop_back();
    EXPECT_THROW(s.validate(), DomainError);
    s = flat_top(5.0);
    std::fill(s.target.begin(), s.target.end(), 0.0);
    EXPECT_THROW(s.validate(), DomainError);
    s = flat_top(5.0);
    s.target[0] = -1.0;
    EXPECT_THROW(s.validate(), DomainError);
}
