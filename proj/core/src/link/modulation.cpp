// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/modulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "ristwin/errors.hpp"

namespace ris::link {

namespace {

int bits_per_axis(Modulation m) { return bits_per_symbol(m) / 2; }

double scale(Modulation m) {
    const int levels = 1 << bits_per_axis(m);
    const double mo = static_cast<double>(levels) * levels;
    return 1.0 / std::sqrt(2.0 * (mo - 1.0) / 3.0);
}

// Level for an axis label read MSB first: Gray -> natural index i, level (L-1) - 2i.
double axis_level(unsigned gray, int levels) {
    unsigned i = gray;
    for (unsigned shift = 1; shift < 16; shift <<= 1) i ^= i >> shift;
    return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(i);
}

struct AxisTable {
    std::vector<double> level;  // indexed by Gray label
};

AxisTable axis_table(Modulation m) {
    const int levels = 1 << bits_per_axis(m);
    AxisTable t;
    t.level.resize(static_cast<std::size_t>(levels));
    for (int g = 0; g < levels; ++g) t.level[static_cast<std::size_t>(g)] = axis_level(static_cast<unsigned>(g), levels) * scale(m);
    return t;
}

}  // namespace

int bits_per_symbol(Modulation m) {
    switch (m) {
        case Modulation::Qpsk: return 2;
        case Modulation::Qam16: return 4;
        case Modulation::Qam64: return 6;
    }
    return 2;
}

std::string to_string(Modulation m) {
    switch (m) {
        case Modulation::Qpsk: return "QPSK";
        case Modulation::Qam16: return "16QAM";
        case Modulation::Qam64: return "64QAM";
    }
    return "QPSK";
}

Modulation parse_modulation(const std::string& text) {
    std::string u = text;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (u == "QPSK") return Modulation::Qpsk;
    if (u == "16QAM" || u == "QAM16") return Modulation::Qam16;
    if (u == "64QAM" || u == "QAM64") return Modulation::Qam64;
    throw ConfigError("unknown modulation '" + text + "' (expected QPSK, 16QAM or 64QAM)");
}

std::vector<cplx> constellation(Modulation m) {
    const int bps = bits_per_symbol(m);
    std::vector<cplx> pts(std::size_t{1} << bps);
    for (unsigned v = 0; v < pts.size(); ++v) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(bps));
        for (int b = 0; b < bps; ++b) bits[static_cast<std::size_t>(b)] = (v >> (bps - 1 - b)) & 1u;
        pts[v] = map_symbols(bits, m)[0];
    }
    return pts;
}

std::vector<cplx> map_symbols(std::span<const std::uint8_t> bits, Modulation m) {
    const auto bps = static_cast<std::size_t>(bits_per_symbol(m));
    if (bits.size() % bps != 0) {
        throw DomainError("map_symbols: " + std::to_string(bits.size()) + " bits is not a multiple of " +
                          std::to_string(bps));
    }
    const auto table = axis_table(m);
    const std::size_t half = bps / 2;
    std::vector<cplx> out(bits.size() / bps);
    for (std::size_t s = 0; s < out.size(); ++s) {
        unsigned gi = 0;
        unsigned gq = 0;
        for (std::size_t b = 0; b < half; ++b) {
            gi = (gi << 1) | (bits[s * bps + b] & 1u);
            gq = (gq << 1) | (bits[s * bps + half + b] & 1u);
        }
        out[s] = {table.level[gi], table.level[gq]};
    }
    return out;
}

std::vector<std::uint8_t> demap_symbols(std::span<const cplx> symbols, Modulation m) {
    const auto table = axis_table(m);
    const int half = bits_per_axis(m);
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size() * static_cast<std::size_t>(2 * half));
    auto nearest = [&](double v) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < table.level.size(); ++g) {
            if (std::abs(v - table.level[g]) < std::abs(v - table.level[best])) best = g;
        }
        return static_cast<unsigned>(best);
    };
    for (const auto& y : symbols) {
        const unsigned gi = nearest(y.real());
        const unsigned gq = nearest(y.imag());
        for (int b = half - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((gi >> b) & 1u));
        for (int b = half - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((gq >> b) & 1u));
    }
    return out;
}

std::vector<float> demap_soft(std::span<const cplx> symbols, Modulation m, std::span<const double> noise_variance) {
    if (noise_variance.size() != 1 && noise_variance.size() != symbols.size()) {
        throw DomainError("demap_soft: need one noise variance or one per symbol");
    }
    const auto table = axis_table(m);
    const int half = bits_per_axis(m);
    std::vector<float> out;
    out.reserve(symbols.size() * static_cast<std::size_t>(2 * half));
    auto axis_llrs = [&](double v, double n0) {
        for (int b = half - 1; b >= 0; --b) {
            double d0 = std::numeric_limits<double>::infinity();
            double d1 = d0;
            for (std::size_t g = 0; g < table.level.size(); ++g) {
                const double d = (v - table.level[g]) * (v - table.level[g]);
                if ((g >> b) & 1u) {
                    d1 = std::min(d1, d);
                } else {
                    d0 = std::min(d0, d);
                }
            }
            out.push_back(static_cast<float>((d1 - d0) / std::max(n0, 1e-30)));
        }
    };
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const double n0 = noise_variance.size() == 1 ? noise_variance[0] : noise_variance[s];
        axis_llrs(symbols[s].real(), n0);
        axis_llrs(symbols[s].imag(), n0);
    }
    return out;
}

}  // namespace ris::link
