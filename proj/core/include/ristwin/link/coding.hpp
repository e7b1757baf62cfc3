// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ris::link {

using Bits = std::vector<std::uint8_t>;

/// Channel coder selection. Convolutional codes are rate 1/n, zero-tail
/// terminated; generator polynomials are octal with the newest input bit in
/// the most significant tap.
struct CoderSpec {
    enum class Kind { None, Convolutional };

    Kind kind = Kind::Convolutional;
    int outputs = 2;           // n in rate 1/n
    int constraint_length = 7; // K

    static CoderSpec none() { return {Kind::None, 1, 1}; }
    static CoderSpec convolutional(int outputs = 2, int constraint_length = 7) {
        return {Kind::Convolutional, outputs, constraint_length};
    }

    /// Throws ConfigError for unsupported (rate, constraint length) pairs.
    void validate() const;
    double rate() const { return kind == Kind::None ? 1.0 : 1.0 / outputs; }
    /// Generators in octal notation; empty for Kind::None.
    std::vector<unsigned> generators() const;
    std::string describe() const;
};

std::size_t encoded_length(std::size_t info_bits, const CoderSpec& spec);

/// Throws DomainError for empty input.
Bits encode(std::span<const std::uint8_t> bits, const CoderSpec& spec);

/// Maximum-likelihood sequence decoding over the zero-terminated trellis.
///
/// `soft` holds one metric per coded bit, positive when 0 is more likely
/// (a log-likelihood ratio or +-1 for hard decisions). Ties prefer the lower
/// predecessor state. Throws DomainError if the length does not match an
/// encoder output.
Bits viterbi_decode(std::span<const float> soft, const CoderSpec& spec);

/// Hard-decision convenience wrapper: bit b becomes metric 1 - 2b.
Bits viterbi_decode_hard(std::span<const std::uint8_t> coded, const CoderSpec& spec);

}  // namespace ris::link
