// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/interleaver.hpp"

#include <string>

#include "ristwin/errors.hpp"

namespace ris::link {

void check_interleaver_block(std::size_t length, int rows, int cols) {
    if (rows < 1 || cols < 1) throw DomainError("interleaver: rows and cols must be >= 1");
    const std::size_t block = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (length != block) {
        throw DomainError("interleaver: length " + std::to_string(length) + " differs from rows*cols = " +
                          std::to_string(block));
    }
}

void check_interleaver_blocks(std::size_t length, int rows, int cols) {
    if (rows < 1 || cols < 1) throw DomainError("interleaver: rows and cols must be >= 1");
    const std::size_t block = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (length == 0 || length % block != 0) {
        throw DomainError("interleaver: length " + std::to_string(length) + " is not a multiple of rows*cols = " +
                          std::to_string(block));
    }
}

}  // namespace ris::link
