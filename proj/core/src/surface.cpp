// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/surface.hpp"

#include <cstring>
#include <sstream>

#include "ristwin/errors.hpp"

namespace ris {

namespace {

constexpr char kMagic[4] = {'R', 'I', 'S', '1'};

}  // namespace

std::set<GridIndex> SurfaceLayout::default_mask() {
    std::set<GridIndex> m;
    for (int r = 4; r < 12; ++r) {
        m.insert({r, 3});
        m.insert({r, 12});
    }
    return m;
}

void SurfaceLayout::validate() const {
    if (rows < 1 || cols < 1) throw DomainError("SurfaceLayout: rows and cols must be >= 1");
    if (!(spacing > 0.0)) throw DomainError("SurfaceLayout: spacing must be positive");
    if (!(feed_position.z > 0.0)) throw DomainError("SurfaceLayout: feed must lie on the +z side (z > 0)");
    if (!(design_frequency > 0.0)) throw DomainError("SurfaceLayout: design frequency must be positive");
    if (feed_exponent < 0.0 || element_exponent < 0.0) {
        throw DomainError("SurfaceLayout: pattern exponents must be non-negative");
    }
    for (const auto& m : mask) {
        if (!in_range(m.row, m.col)) {
            throw DomainError("SurfaceLayout: mask position (" + std::to_string(m.row) + ", " +
                              std::to_string(m.col) + ") outside the grid");
        }
    }
    if (mask.size() >= element_count()) throw DomainError("SurfaceLayout: mask disables every element");
}

Vec3 element_position(const SurfaceLayout& layout, int row, int col) {
    if (!layout.in_range(row, col)) {
        throw DomainError("element_position: index (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") out of range");
    }
    return {(col - (layout.cols - 1) / 2.0) * layout.spacing, (row - (layout.rows - 1) / 2.0) * layout.spacing, 0.0};
}

Codeword::Codeword(int rows, int cols, std::vector<ElementState> states)
    : rows_(rows), cols_(cols), states_(std::move(states)) {
    if (rows < 1 || cols < 1 || states_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw DomainError("Codeword: state count does not match rows*cols");
    }
}

Codeword Codeword::uniform(const SurfaceLayout& layout, int code) {
    const ElementState s = ElementState::from_code(code);
    std::vector<ElementState> states(layout.element_count(), s);
    for (const auto& m : layout.mask) states[static_cast<std::size_t>(m.row * layout.cols + m.col)] = ElementState::masked();
    return Codeword(layout.rows, layout.cols, std::move(states));
}

ElementState Codeword::at(int row, int col) const {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw DomainError("Codeword: index out of range");
    return states_[static_cast<std::size_t>(row * cols_ + col)];
}

void Codeword::set(int row, int col, ElementState s) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw DomainError("Codeword: index out of range");
    states_[static_cast<std::size_t>(row * cols_ + col)] = s;
}

void Codeword::check_consistent(const SurfaceLayout& layout) const {
    if (rows_ != layout.rows || cols_ != layout.cols) {
        throw DomainError("Codeword: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                          " does not match layout " + std::to_string(layout.rows) + "x" +
                          std::to_string(layout.cols));
    }
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (at(r, c).is_masked() != layout.is_masked(r, c)) {
                throw DomainError("Codeword: MASKED entries differ from the layout mask at (" + std::to_string(r) +
                                  ", " + std::to_string(c) + ")");
            }
        }
    }
}

std::size_t bias_frame_size(int rows, int cols) {
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    return kBiasFrameHeaderSize + (n + 3) / 4;
}

BiasFrame encode_bias_frame(const Codeword& codeword) {
    const int rows = codeword.rows();
    const int cols = codeword.cols();
    if (rows < 1 || rows > 255 || cols < 1 || cols > 255) {
        throw DomainError("encode_bias_frame: dimensions must lie in 1..255");
    }
    BiasFrame frame(bias_frame_size(rows, cols), 0);
    std::memcpy(frame.data(), kMagic, sizeof(kMagic));
    frame[4] = kBiasFrameVersion;
    frame[5] = static_cast<std::uint8_t>(rows);
    frame[6] = static_cast<std::uint8_t>(cols);
    const auto states = codeword.states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto bits = states[i].is_masked() ? 0u : static_cast<unsigned>(states[i].code());
        frame[kBiasFrameHeaderSize + i / 4] |= static_cast<std::uint8_t>(bits << (2 * (i % 4)));
    }
    return frame;
}

Codeword decode_bias_frame(std::span<const std::uint8_t> frame, const SurfaceLayout& layout) {
    if (frame.size() < kBiasFrameHeaderSize) {
        throw FormatError("length", "bias frame: " + std::to_string(frame.size()) + " bytes is shorter than the header");
    }
    if (std::memcmp(frame.data(), kMagic, sizeof(kMagic)) != 0) {
        throw FormatError("magic", "bias frame: bad magic (expected \"RIS1\")");
    }
    if (frame[4] != kBiasFrameVersion) {
        throw FormatError("version", "bias frame: unsupported version " + std::to_string(frame[4]));
    }
    if (frame[5] != layout.rows) {
        throw FormatError("rows", "bias frame: rows " + std::to_string(frame[5]) + " do not match layout " +
                                      std::to_string(layout.rows));
    }
    if (frame[6] != layout.cols) {
        throw FormatError("cols", "bias frame: cols " + std::to_string(frame[6]) + " do not match layout " +
                                      std::to_string(layout.cols));
    }
    const std::size_t expected = bias_frame_size(layout.rows, layout.cols);
    if (frame.size() != expected) {
        throw FormatError("length", "bias frame: length " + std::to_string(frame.size()) + " bytes, expected " +
                                        std::to_string(expected));
    }
    std::vector<ElementState> states(layout.element_count());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const int bits = (frame[kBiasFrameHeaderSize + i / 4] >> (2 * (i % 4))) & 0x3;
        states[i] = ElementState::from_code(bits);
    }
    for (const auto& m : layout.mask) states[static_cast<std::size_t>(m.row * layout.cols + m.col)] = ElementState::masked();
    return Codeword(layout.rows, layout.cols, std::move(states));
}

std::string codeword_to_text(const Codeword& codeword) {
    std::ostringstream out;
    for (int r = 0; r < codeword.rows(); ++r) {
        for (int c = 0; c < codeword.cols(); ++c) {
            if (c) out << ' ';
            const auto s = codeword.at(r, c);
            if (s.is_masked()) {
                out << '-';
            } else {
                out << s.code();
            }
        }
        out << '\n';
    }
    return out.str();
}

Codeword codeword_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ElementState> states;
    int rows = 0;
    int cols = -1;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string tok;
        int n = 0;
        while (ls >> tok) {
            if (tok == "-") {
                states.push_back(ElementState::masked());
            } else if (tok.size() == 1 && tok[0] >= '0' && tok[0] <= '3') {
                states.push_back(ElementState::from_code(tok[0] - '0'));
            } else {
                throw FormatError("cell", "codeword text: bad cell '" + tok + "' on row " + std::to_string(rows));
            }
            ++n;
        }
        if (cols < 0) cols = n;
        if (n != cols) throw FormatError("cols", "codeword text: ragged row " + std::to_string(rows));
        ++rows;
    }
    if (rows == 0) throw FormatError("rows", "codeword text: empty");
    return Codeword(rows, cols, std::move(states));
}

}  // namespace ris
