// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ristwin/link/ofdm.hpp"

namespace ris::link {

struct SyncResult {
    std::size_t timing = 0;       // first sample of the preamble's cyclic prefix
    double cfo_subcarriers = 0.0; // fractional part only, in (-1, 1]
    double peak_metric = 0.0;
};

/// Repeated-half timing metric M(d) = |P(d)|^2 / R(d)^2 for every start d.
std::vector<double> timing_metric(std::span<const cplx> stream, const OfdmNumerology& num);

/// Coarse timing from the plateau midpoint of the metric minus half the
/// cyclic prefix (plateau: run >= 0.9 of the maximum after smoothing over
/// cp_length + 1), refined by correlating with the known preamble within
/// +-cp_length. CFO = angle(P) / pi at the midpoint.
///
/// Throws NoFrameFound when the raw metric never reaches `threshold`. Pure
/// noise stays near 1 / (fft_size/2); a frame peaks near (s / (1 + s))^2 at
/// time-domain SNR s.
SyncResult synchronize(std::span<const cplx> stream, const OfdmNumerology& num, double threshold = 0.04);

/// Removes a carrier offset given in subcarrier spacings, in place.
void correct_cfo(std::span<cplx> stream, const OfdmNumerology& num, double cfo_subcarriers);

}  // namespace ris::link
