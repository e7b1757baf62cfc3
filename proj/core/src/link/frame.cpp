// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/frame.hpp"

#include <cmath>
#include <string>

#include "ristwin/errors.hpp"

namespace ris::link {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

void FrameFormat::validate() const {
    numerology.validate();
    if (max_data_symbols < 1) throw ConfigError("frame: at least one data symbol per frame is required");
}

std::size_t FrameFormat::bits_per_data_symbol() const {
    return static_cast<std::size_t>(numerology.data_cells_per_symbol()) * static_cast<std::size_t>(bits_per_symbol(modulation));
}

std::size_t frame_length(const OfdmNumerology& num, int data_symbols) {
    return static_cast<std::size_t>(1 + data_symbols) * static_cast<std::size_t>(num.symbol_length());
}

OfdmSymbolGrid preamble_grid(const OfdmNumerology& num) {
    OfdmSymbolGrid g = OfdmSymbolGrid::empty(num, 1);
    const double r = 1.0;  // sqrt(2) * (1/sqrt(2))
    for (int u = 0; u < num.used_subcarriers; ++u) {
        const int k = num.logical_index(u);
        const int col = num.grid_column(k);
        if (k % 2 != 0) {
            g.at(0, col) = {0.0, 0.0};
            continue;
        }
        const std::uint64_t h = mix(0x5052'4541ull ^ static_cast<std::uint64_t>(u));
        g.at(0, col) = {(h & 1u) ? -r : r, (h & 2u) ? -r : r};
    }
    return g;
}

std::vector<cplx> extract_data_cells(const OfdmSymbolGrid& grid) {
    std::vector<cplx> out;
    for (int s = 0; s < grid.symbols; ++s) {
        for (int c = 0; c < grid.width; ++c) {
            if (grid.role(s, c) == CellRole::Data) out.push_back(grid.at(s, c));
        }
    }
    return out;
}

Frame build_frame(std::span<const std::uint8_t> bits, const FrameFormat& format) {
    format.validate();
    const OfdmNumerology& num = format.numerology;
    const std::size_t per_symbol = format.bits_per_data_symbol();
    const std::size_t capacity = format.capacity_bits();
    if (bits.size() > capacity) {
        throw FramingError(bits.size(), capacity,
                           "frame: payload of " + std::to_string(bits.size()) + " bits exceeds the capacity of " +
                               std::to_string(capacity) + " bits (" + std::to_string(format.max_data_symbols) +
                               " symbols x " + std::to_string(per_symbol) + " bits)");
    }

    Frame frame;
    frame.payload_bits = bits.size();
    const int symbols = static_cast<int>((bits.size() + per_symbol - 1) / per_symbol);
    frame.preamble_only = symbols == 0;
    frame.pad_bits = static_cast<std::size_t>(symbols) * per_symbol - bits.size();

    std::vector<std::uint8_t> padded(bits.begin(), bits.end());
    for (std::size_t i = 0; i < frame.pad_bits; ++i) padded.push_back(static_cast<std::uint8_t>(mix(0x5041'4400ull + i) & 1u));
    const std::vector<cplx> data = map_symbols(padded, format.modulation);

    frame.data = OfdmSymbolGrid::empty(num, symbols);
    std::size_t next = 0;
    for (int s = 0; s < symbols; ++s) {
        for (int u = 0; u < num.used_subcarriers; ++u) {
            const int col = num.grid_column(num.logical_index(u));
            frame.data.at(s, col) = num.is_pilot(u) ? pilot_value(s, u) : data[next++];
        }
    }

    frame.samples = ofdm_modulate(preamble_grid(num), num);
    const std::vector<cplx> body = ofdm_modulate(frame.data, num);
    frame.samples.insert(frame.samples.end(), body.begin(), body.end());
    return frame;
}

}  // namespace ris::link
