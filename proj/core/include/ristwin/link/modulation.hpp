// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ris::link {

using cplx = std::complex<double>;

enum class Modulation { Qpsk, Qam16, Qam64 };

int bits_per_symbol(Modulation m);
std::string to_string(Modulation m);
/// Accepts QPSK, 16QAM, 64QAM (case-insensitive). Throws ConfigError.
Modulation parse_modulation(const std::string& text);

/// Gray-labelled square constellation, unit average power. The first half of
/// each bit group selects the in-phase level, the second half the quadrature
/// level; per axis the Gray index 0 is the most positive level, so QPSK 00
/// maps to (1 + j) / sqrt(2).
std::vector<cplx> constellation(Modulation m);

/// Throws DomainError if the bit count is not a multiple of bits per symbol.
std::vector<cplx> map_symbols(std::span<const std::uint8_t> bits, Modulation m);

/// Nearest-point hard decisions.
std::vector<std::uint8_t> demap_symbols(std::span<const cplx> symbols, Modulation m);

/// Max-log LLRs (positive favours 0). `noise_variance` is the complex noise
/// variance per symbol; pass one value per symbol or a single value.
std::vector<float> demap_soft(std::span<const cplx> symbols, Modulation m, std::span<const double> noise_variance);

}  // namespace ris::link
