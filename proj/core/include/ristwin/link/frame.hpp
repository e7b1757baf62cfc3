// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ristwin/link/modulation.hpp"
#include "ristwin/link/ofdm.hpp"

namespace ris::link {

struct FrameFormat {
    OfdmNumerology numerology{};
    Modulation modulation = Modulation::Qpsk;
    int max_data_symbols = 14;

    void validate() const;
    std::size_t bits_per_data_symbol() const;
    std::size_t capacity_bits() const { return bits_per_data_symbol() * static_cast<std::size_t>(max_data_symbols); }
};

/// Preamble grid: QPSK on even subcarriers only, scaled by sqrt(2) so the
/// symbol keeps the power of a data symbol. Its useful part is two identical
/// halves.
OfdmSymbolGrid preamble_grid(const OfdmNumerology& num);

struct Frame {
    std::vector<cplx> samples;     // preamble followed by data symbols
    OfdmSymbolGrid data;           // transmitted data symbols (pilots included)
    std::size_t payload_bits = 0;  // bits carried before padding
    std::size_t pad_bits = 0;
    bool preamble_only = false;    // set for an empty payload

    int data_symbols() const { return data.symbols; }
};

/// Fills as many data symbols as the payload needs (ceil), pads the last one
/// with a fixed pseudo-random sequence and prepends the preamble. Throws
/// FramingError when the payload exceeds `format.capacity_bits()`.
Frame build_frame(std::span<const std::uint8_t> bits, const FrameFormat& format);

/// Data cells of `grid` in transmit order (symbol-major, ascending frequency).
std::vector<cplx> extract_data_cells(const OfdmSymbolGrid& grid);

/// Frame length in samples for a given number of data symbols.
std::size_t frame_length(const OfdmNumerology& num, int data_symbols);

}  // namespace ris::link
