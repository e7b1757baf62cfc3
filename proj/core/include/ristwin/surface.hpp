// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ristwin/element.hpp"
#include "ristwin/geometry.hpp"

namespace ris {

struct GridIndex {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

/// Geometry of the reflecting surface and its prime-focus feed.
///
/// The surface lies in the z = 0 plane centred on the origin; the feed sits on
/// the +z side. Rows run along y, columns along x.
struct SurfaceLayout {
    int rows = 16;
    int cols = 16;
    double spacing = 0.050;                       // m
    std::set<GridIndex> mask = default_mask();    // disabled positions
    Vec3 feed_position{0.0, 0.0, 0.720};          // m
    double design_frequency = 2.3e9;              // Hz
    double feed_exponent = 3.0;                   // q_f, field pattern cos^q_f
    double element_exponent = 0.0;                // q_e, field pattern cos^q_e

    /// 16 removals for bias wiring: columns 3 and 12, rows 4..11.
    static std::set<GridIndex> default_mask();

    /// Throws DomainError if any invariant is violated.
    void validate() const;

    bool in_range(int row, int col) const { return row >= 0 && row < rows && col >= 0 && col < cols; }
    bool is_masked(int row, int col) const { return mask.count({row, col}) != 0; }
    std::size_t element_count() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
    std::size_t active_count() const { return element_count() - mask.size(); }

    /// Physical aperture area, rows*cols*spacing^2.
    double aperture_area() const { return rows * spacing * cols * spacing; }
};

/// Throws DomainError for out-of-range indices.
Vec3 element_position(const SurfaceLayout& layout, int row, int col);

/// Per-element configuration grid, row-major.
class Codeword {
public:
    Codeword() = default;
    Codeword(int rows, int cols, std::vector<ElementState> states);

    /// Every active element set to `code`, masked positions MASKED.
    static Codeword uniform(const SurfaceLayout& layout, int code);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    ElementState at(int row, int col) const;
    void set(int row, int col, ElementState s);
    std::span<const ElementState> states() const { return states_; }

    /// Throws DomainError if dimensions differ from the layout or MASKED
    /// entries do not coincide with the layout mask.
    void check_consistent(const SurfaceLayout& layout) const;

    friend bool operator==(const Codeword&, const Codeword&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<ElementState> states_;
};

/// Control-board frame: "RIS1", version 1, rows, cols, then 2-bit codes packed
/// row-major, least-significant bits first. MASKED packs as 00.
using BiasFrame = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kBiasFrameVersion = 1;
inline constexpr std::size_t kBiasFrameHeaderSize = 7;

std::size_t bias_frame_size(int rows, int cols);

/// Throws DomainError for dimensions outside 1..255 or an inconsistent grid.
BiasFrame encode_bias_frame(const Codeword& codeword);

/// Throws FormatError naming "magic", "version", "rows", "cols" or "length".
Codeword decode_bias_frame(std::span<const std::uint8_t> frame, const SurfaceLayout& layout);

/// Text form used by the CLI: one line per row, codes 0..3 separated by
/// spaces, '-' for masked positions.
std::string codeword_to_text(const Codeword& codeword);
Codeword codeword_from_text(const std::string& text);

}  // namespace ris
