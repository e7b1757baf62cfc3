// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ris::link {

using cplx = std::complex<double>;

/// LTE-like numerology. Used subcarriers sit symmetrically around an unused
/// DC bin; every `pilot_spacing`-th used subcarrier (starting with the lowest)
/// carries a pilot in every data symbol.
struct OfdmNumerology {
    int fft_size = 2048;
    int used_subcarriers = 1200;
    int cp_length = 144;
    double subcarrier_spacing_hz = 15e3;
    int pilot_spacing = 6;

    /// Throws ConfigError on inconsistent values.
    void validate() const;

    double sample_rate_hz() const { return fft_size * subcarrier_spacing_hz; }
    int symbol_length() const { return fft_size + cp_length; }
    double symbol_duration_s() const { return symbol_length() / sample_rate_hz(); }

    /// Signed subcarrier index of used subcarrier u (0 = lowest frequency).
    int logical_index(int used_index) const;
    /// Column in an fft_size-wide grid for signed index k (k + fft_size/2).
    int grid_column(int logical) const { return logical + fft_size / 2; }
    bool is_pilot(int used_index) const { return used_index % pilot_spacing == 0; }
    int pilots_per_symbol() const;
    int data_cells_per_symbol() const { return used_subcarriers - pilots_per_symbol(); }
};

enum class CellRole : std::uint8_t { Data, Pilot, Virtual };

/// Frequency-domain symbols x fft_size cells in ascending frequency order
/// (column c holds subcarrier c - fft_size/2). Virtual cells are the guard
/// band and DC.
struct OfdmSymbolGrid {
    int symbols = 0;
    int width = 0;
    std::vector<cplx> cells;
    std::vector<CellRole> roles;

    static OfdmSymbolGrid empty(const OfdmNumerology& num, int symbols);

    cplx& at(int symbol, int column) { return cells[static_cast<std::size_t>(symbol * width + column)]; }
    const cplx& at(int symbol, int column) const { return cells[static_cast<std::size_t>(symbol * width + column)]; }
    CellRole role(int symbol, int column) const { return roles[static_cast<std::size_t>(symbol * width + column)]; }
};

/// Known pilot symbol for (data symbol, used subcarrier); unit-power QPSK.
cplx pilot_value(int symbol, int used_index);

/// Unitary inverse transform per symbol with the cyclic prefix prepended.
/// Throws DomainError when the grid width does not match fft_size.
std::vector<cplx> ofdm_modulate(const OfdmSymbolGrid& grid, const OfdmNumerology& num);

/// Inverse of ofdm_modulate for `symbols` consecutive symbols whose useful
/// parts start at `start + cp_length - backoff`; the phase ramp caused by the
/// backoff is removed. Roles follow the pilot layout. Throws DomainError if
/// the stream is too short.
OfdmSymbolGrid ofdm_demodulate(std::span<const cplx> stream, const OfdmNumerology& num, int symbols,
                               std::size_t start = 0, int backoff = 0);

}  // namespace ris::link
