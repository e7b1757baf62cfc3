// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <vector>

#include "ristwin/link/ofdm.hpp"

namespace ris::link {

/// Least squares at pilot cells, averaged over the frame's symbols, then
/// linear interpolation in subcarrier index with linear extrapolation at the
/// band edges. Returns one value per grid column; virtual columns hold 0.
std::vector<cplx> estimate_channel(const OfdmSymbolGrid& received, const OfdmNumerology& num);

/// Common phase of symbol `s` relative to `channel`, from its pilots.
double common_phase_error(const OfdmSymbolGrid& received, const OfdmNumerology& num, const std::vector<cplx>& channel,
                          int symbol);

/// Zero-forcing equalization of every used cell, with optional per-symbol
/// common-phase correction.
OfdmSymbolGrid equalize(const OfdmSymbolGrid& received, const OfdmNumerology& num, const std::vector<cplx>& channel,
                        bool correct_common_phase = true);

}  // namespace ris::link
