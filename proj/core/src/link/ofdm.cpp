// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/ofdm.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <string>

#include "ristwin/errors.hpp"

namespace ris::link {

namespace {

// FFTW planning is not thread-safe; executing a plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class UnitaryDft {
public:
    UnitaryDft(int n, int sign) : n_(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        in_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        out_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        plan_ = fftw_plan_dft_1d(n, in_, out_, sign, FFTW_ESTIMATE);
    }
    ~UnitaryDft() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }
    UnitaryDft(const UnitaryDft&) = delete;
    UnitaryDft& operator=(const UnitaryDft&) = delete;

    cplx* input() { return reinterpret_cast<cplx*>(in_); }
    const cplx* output() const { return reinterpret_cast<const cplx*>(out_); }

    void execute() {
        fftw_execute(plan_);
        const double s = 1.0 / std::sqrt(static_cast<double>(n_));
        cplx* o = reinterpret_cast<cplx*>(out_);
        for (int i = 0; i < n_; ++i) o[i] *= s;
    }

private:
    int n_;
    fftw_complex* in_ = nullptr;
    fftw_complex* out_ = nullptr;
    fftw_plan plan_ = nullptr;
};

// Pilot and pad sequences hash the cell coordinates; no state to carry.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

void OfdmNumerology::validate() const {
    if (fft_size < 8 || (fft_size & (fft_size - 1)) != 0) throw ConfigError("OFDM: transform size must be a power of two >= 8");
    if (used_subcarriers < 2 || used_subcarriers % 2 != 0) throw ConfigError("OFDM: used subcarriers must be even and >= 2");
    if (used_subcarriers >= fft_size) throw ConfigError("OFDM: used subcarriers must be fewer than the transform size");
    if (cp_length < 0 || cp_length >= fft_size) throw ConfigError("OFDM: cyclic prefix must lie in [0, fft_size)");
    if (!(subcarrier_spacing_hz > 0.0)) throw ConfigError("OFDM: subcarrier spacing must be positive");
    if (pilot_spacing < 2) throw ConfigError("OFDM: pilot spacing must be >= 2");
    if (pilot_spacing >= used_subcarriers) throw ConfigError("OFDM: pilot spacing must be below the used subcarrier count");
}

int OfdmNumerology::logical_index(int used_index) const {
    const int half = used_subcarriers / 2;
    return used_index < half ? used_index - half : used_index - half + 1;
}

int OfdmNumerology::pilots_per_symbol() const { return (used_subcarriers + pilot_spacing - 1) / pilot_spacing; }

OfdmSymbolGrid OfdmSymbolGrid::empty(const OfdmNumerology& num, int symbols) {
    OfdmSymbolGrid g;
    g.symbols = symbols;
    g.width = num.fft_size;
    g.cells.assign(static_cast<std::size_t>(symbols) * static_cast<std::size_t>(num.fft_size), cplx(0.0, 0.0));
    g.roles.assign(g.cells.size(), CellRole::Virtual);
    for (int s = 0; s < symbols; ++s) {
        for (int u = 0; u < num.used_subcarriers; ++u) {
            const int col = num.grid_column(num.logical_index(u));
            g.roles[static_cast<std::size_t>(s * g.width + col)] = num.is_pilot(u) ? CellRole::Pilot : CellRole::Data;
        }
    }
    return g;
}

cplx pilot_value(int symbol, int used_index) {
    const std::uint64_t h = mix((static_cast<std::uint64_t>(symbol) << 32) ^ static_cast<std::uint64_t>(used_index) ^ 0x5049'4C4Full);
    const double r = 1.0 / std::sqrt(2.0);
    return {(h & 1u) ? -r : r, (h & 2u) ? -r : r};
}

std::vector<cplx> ofdm_modulate(const OfdmSymbolGrid& grid, const OfdmNumerology& num) {
    num.validate();
    if (grid.width != num.fft_size) throw DomainError("ofdm_modulate: grid width differs from the transform size");
    const int n = num.fft_size;
    const int cp = num.cp_length;
    std::vector<cplx> out(static_cast<std::size_t>(grid.symbols) * static_cast<std::size_t>(n + cp));
    UnitaryDft idft(n, FFTW_BACKWARD);
    for (int s = 0; s < grid.symbols; ++s) {
        cplx* in = idft.input();
        for (int col = 0; col < n; ++col) {
            const int k = col - n / 2;
            in[(k + n) % n] = grid.at(s, col);
        }
        idft.execute();
        cplx* dst = out.data() + static_cast<std::ptrdiff_t>(s) * (n + cp);
        std::memcpy(static_cast<void*>(dst + cp), idft.output(), sizeof(cplx) * static_cast<std::size_t>(n));
        std::memcpy(static_cast<void*>(dst), idft.output() + (n - cp), sizeof(cplx) * static_cast<std::size_t>(cp));
    }
    return out;
}

OfdmSymbolGrid ofdm_demodulate(std::span<const cplx> stream, const OfdmNumerology& num, int symbols,
                               std::size_t start, int backoff) {
    num.validate();
    if (symbols < 0) throw DomainError("ofdm_demodulate: negative symbol count");
    if (backoff < 0 || backoff > num.cp_length) throw DomainError("ofdm_demodulate: backoff must lie within the cyclic prefix");
    const int n = num.fft_size;
    const std::size_t sym_len = static_cast<std::size_t>(num.symbol_length());
    const std::size_t needed = start + static_cast<std::size_t>(symbols) * sym_len - static_cast<std::size_t>(backoff);
    if (stream.size() < needed) {
        throw DomainError("ofdm_demodulate: stream of " + std::to_string(stream.size()) + " samples is shorter than " +
                          std::to_string(needed));
    }
    OfdmSymbolGrid g = OfdmSymbolGrid::empty(num, symbols);
    // Starting `backoff` samples early delays the symbol cyclically; undo the
    // resulting linear phase so a clean channel demodulates to the grid.
    std::vector<cplx> ramp(static_cast<std::size_t>(n));
    for (int col = 0; col < n; ++col) {
        ramp[static_cast<std::size_t>(col)] = std::polar(1.0, 2.0 * std::numbers::pi * (col - n / 2) * backoff / n);
    }
    UnitaryDft dft(n, FFTW_FORWARD);
    for (int s = 0; s < symbols; ++s) {
        const std::size_t body = start + static_cast<std::size_t>(s) * sym_len + static_cast<std::size_t>(num.cp_length - backoff);
        std::memcpy(static_cast<void*>(dft.input()), stream.data() + body, sizeof(cplx) * static_cast<std::size_t>(n));
        dft.execute();
        for (int col = 0; col < n; ++col) {
            const int k = col - n / 2;
            g.at(s, col) = dft.output()[(k + n) % n] * ramp[static_cast<std::size_t>(col)];
        }
    }
    return g;
}

}  // namespace ris::link
