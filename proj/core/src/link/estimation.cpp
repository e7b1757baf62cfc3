// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/estimation.hpp"

#include <cmath>

#include "ristwin/errors.hpp"

namespace ris::link {

std::vector<cplx> estimate_channel(const OfdmSymbolGrid& received, const OfdmNumerology& num) {
    num.validate();
    if (received.width != num.fft_size) throw DomainError("estimate_channel: grid width differs from the transform size");
    if (received.symbols < 1) throw DomainError("estimate_channel: no symbols to estimate from");

    std::vector<int> ks;
    std::vector<cplx> hs;
    for (int u = 0; u < num.used_subcarriers; ++u) {
        if (!num.is_pilot(u)) continue;
        const int k = num.logical_index(u);
        const int col = num.grid_column(k);
        cplx acc{0.0, 0.0};
        for (int s = 0; s < received.symbols; ++s) acc += received.at(s, col) / pilot_value(s, u);
        ks.push_back(k);
        hs.push_back(acc / static_cast<double>(received.symbols));
    }

    std::vector<cplx> h(static_cast<std::size_t>(num.fft_size), cplx(0.0, 0.0));
    const std::size_t p = ks.size();
    std::size_t seg = 0;
    for (int u = 0; u < num.used_subcarriers; ++u) {
        const int k = num.logical_index(u);
        cplx value;
        if (p == 1) {
            value = hs[0];
        } else {
            // ks is ascending; pick the bracketing (or nearest edge) segment.
            while (seg + 2 < p && k > ks[seg + 1]) ++seg;
            const double t = static_cast<double>(k - ks[seg]) / static_cast<double>(ks[seg + 1] - ks[seg]);
            value = hs[seg] + t * (hs[seg + 1] - hs[seg]);
        }
        h[static_cast<std::size_t>(num.grid_column(k))] = value;
    }
    return h;
}

double common_phase_error(const OfdmSymbolGrid& received, const OfdmNumerology& num, const std::vector<cplx>& channel,
                          int symbol) {
    cplx acc{0.0, 0.0};
    for (int u = 0; u < num.used_subcarriers; ++u) {
        if (!num.is_pilot(u)) continue;
        const int col = num.grid_column(num.logical_index(u));
        acc += received.at(symbol, col) * std::conj(channel[static_cast<std::size_t>(col)] * pilot_value(symbol, u));
    }
    return std::arg(acc);
}

OfdmSymbolGrid equalize(const OfdmSymbolGrid& received, const OfdmNumerology& num, const std::vector<cplx>& channel,
                        bool correct_common_phase) {
    if (channel.size() != static_cast<std::size_t>(received.width)) throw DomainError("equalize: channel length differs from grid width");
    OfdmSymbolGrid out = received;
    for (int s = 0; s < received.symbols; ++s) {
        const cplx rot = correct_common_phase ? std::polar(1.0, -common_phase_error(received, num, channel, s)) : cplx(1.0, 0.0);
        for (int c = 0; c < received.width; ++c) {
            if (received.role(s, c) == CellRole::Virtual) continue;
            const cplx h = channel[static_cast<std::size_t>(c)];
            out.at(s, c) = h == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : received.at(s, c) * rot / h;
        }
    }
    return out;
}

}  // namespace ris::link
