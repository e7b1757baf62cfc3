// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ris::link {

/// Throws DomainError unless rows, cols >= 1 and length == rows * cols.
void check_interleaver_block(std::size_t length, int rows, int cols);

/// Throws DomainError unless length is a positive multiple of rows * cols.
void check_interleaver_blocks(std::size_t length, int rows, int cols);

/// Block interleaver: written row by row, read column by column.
template <typename T>
std::vector<T> interleave(std::span<const T> in, int rows, int cols) {
    check_interleaver_block(in.size(), rows, cols);
    const auto r_n = static_cast<std::size_t>(rows);
    const auto c_n = static_cast<std::size_t>(cols);
    std::vector<T> out(in.size());
    for (std::size_t r = 0; r < r_n; ++r) {
        for (std::size_t c = 0; c < c_n; ++c) out[c * r_n + r] = in[r * c_n + c];
    }
    return out;
}

template <typename T>
std::vector<T> deinterleave(std::span<const T> in, int rows, int cols) {
    check_interleaver_block(in.size(), rows, cols);
    const auto r_n = static_cast<std::size_t>(rows);
    const auto c_n = static_cast<std::size_t>(cols);
    std::vector<T> out(in.size());
    for (std::size_t r = 0; r < r_n; ++r) {
        for (std::size_t c = 0; c < c_n; ++c) out[r * c_n + c] = in[c * r_n + r];
    }
    return out;
}

/// Applies the block permutation to consecutive blocks of rows * cols values;
/// the length must be a whole number of blocks.
template <typename T>
std::vector<T> interleave_blocks(std::span<const T> in, int rows, int cols, bool inverse = false) {
    check_interleaver_blocks(in.size(), rows, cols);
    const std::size_t block = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    std::vector<T> out;
    out.reserve(in.size());
    for (std::size_t off = 0; off < in.size(); off += block) {
        auto part = in.subspan(off, block);
        auto done = inverse ? deinterleave<T>(part, rows, cols) : interleave<T>(part, rows, cols);
        out.insert(out.end(), done.begin(), done.end());
    }
    return out;
}

}  // namespace ris::link
