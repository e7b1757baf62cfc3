// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/sync.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ristwin/errors.hpp"
#include "ristwin/link/frame.hpp"
#include "ristwin/units.hpp"

namespace ris::link {

namespace {

struct Running {
    std::vector<cplx> p;
    std::vector<double> r;
};

// P(d) = sum_{m<L} conj(x[d+m]) x[d+m+L],  R(d) = half the energy of both
// halves, which bounds M = |P|^2 / R^2 by 1 even at buffer edges.
Running correlate(std::span<const cplx> x, std::size_t half) {
    Running out;
    if (x.size() < 2 * half) return out;
    const std::size_t count = x.size() - 2 * half + 1;
    out.p.resize(count);
    out.r.resize(count);
    cplx p{0.0, 0.0};
    double e = 0.0;
    for (std::size_t m = 0; m < half; ++m) {
        p += std::conj(x[m]) * x[m + half];
        e += std::norm(x[m]) + std::norm(x[m + half]);
    }
    out.p[0] = p;
    out.r[0] = 0.5 * e;
    for (std::size_t d = 1; d < count; ++d) {
        p += std::conj(x[d + half - 1]) * x[d + 2 * half - 1] - std::conj(x[d - 1]) * x[d + half - 1];
        e += std::norm(x[d + 2 * half - 1]) - std::norm(x[d - 1]);
        out.p[d] = p;
        out.r[d] = std::max(0.5 * e, 0.0);
    }
    return out;
}

// Running sums leave rounding residue where the window is (nearly) silent;
// R below a small fraction of the mean window energy counts as silence.
std::vector<double> metric_of(const Running& c, std::span<const cplx> x, std::size_t half) {
    double total = 0.0;
    for (const cplx& v : x) total += std::norm(v);
    const double floor = 1e-9 * total / static_cast<double>(x.size()) * static_cast<double>(half);
    std::vector<double> m(c.p.size(), 0.0);
    for (std::size_t d = 0; d < m.size(); ++d) {
        if (c.r[d] > floor) m[d] = std::min(1.0, std::norm(c.p[d]) / (c.r[d] * c.r[d]));
    }
    return m;
}

}  // namespace

std::vector<double> timing_metric(std::span<const cplx> stream, const OfdmNumerology& num) {
    num.validate();
    const std::size_t half = static_cast<std::size_t>(num.fft_size / 2);
    return metric_of(correlate(stream, half), stream, half);
}

SyncResult synchronize(std::span<const cplx> stream, const OfdmNumerology& num, double threshold) {
    num.validate();
    const std::size_t half = static_cast<std::size_t>(num.fft_size / 2);
    if (stream.size() < 2 * half) throw NoFrameFound("sync: stream shorter than one preamble");
    // Silence on both sides keeps the metric's ramps symmetric for a frame
    // that starts or ends at the buffer edge.
    const std::size_t pad = 2 * half;
    std::vector<cplx> buf(stream.size() + 2 * pad, cplx(0.0, 0.0));
    std::copy(stream.begin(), stream.end(), buf.begin() + static_cast<std::ptrdiff_t>(pad));
    const Running c = correlate(buf, half);

    const std::vector<double> raw = metric_of(c, buf, half);
    const double peak = *std::max_element(raw.begin(), raw.end());
    if (!(peak >= threshold)) throw NoFrameFound("sync: timing metric peak " + std::to_string(peak) + " below threshold");

    // The clean plateau spans cp_length + 1 starts. A centred moving average of
    // that width turns it into a symmetric ridge that survives noise dips.
    const std::size_t w = static_cast<std::size_t>(num.cp_length) + 1;
    std::vector<double> m(raw.size(), 0.0);
    {
        std::vector<double> prefix(raw.size() + 1, 0.0);
        for (std::size_t d = 0; d < raw.size(); ++d) prefix[d + 1] = prefix[d] + raw[d];
        for (std::size_t d = 0; d < raw.size(); ++d) {
            const std::size_t a = d >= w / 2 ? d - w / 2 : 0;
            const std::size_t b = std::min(raw.size(), d + w - w / 2);
            m[d] = (prefix[b] - prefix[a]) / static_cast<double>(w);
        }
    }
    const auto peak_it = std::max_element(m.begin(), m.end());
    const double level = 0.9 * *peak_it;
    std::size_t lo = static_cast<std::size_t>(peak_it - m.begin());
    std::size_t hi = lo;
    while (lo > 0 && m[lo - 1] >= level) --lo;
    while (hi + 1 < m.size() && m[hi + 1] >= level) ++hi;
    const double mid = 0.5 * static_cast<double>(lo + hi);

    SyncResult res;
    res.peak_metric = peak;
    const std::size_t at = std::min(static_cast<std::size_t>(std::round(mid)), c.p.size() - 1);
    res.cfo_subcarriers = std::arg(c.p[at]) / kPi;

    // The plateau's ramps are asymmetric, so its midpoint is only a coarse
    // estimate. Refine with the known preamble, CFO removed, over +-cp_length.
    std::vector<cplx> ref = ofdm_modulate(preamble_grid(num), num);
    const long coarse = std::lround(mid - 0.5 * num.cp_length);
    const long span = num.cp_length;
    const double omega = 2.0 * kPi * res.cfo_subcarriers / num.fft_size;
    for (std::size_t n = 0; n < ref.size(); ++n) ref[n] = std::conj(ref[n]) * std::polar(1.0, -omega * static_cast<double>(n));
    long best = coarse;
    double best_mag = -1.0;
    for (long d = coarse - span; d <= coarse + span; ++d) {
        if (d < 0 || static_cast<std::size_t>(d) + ref.size() > buf.size()) continue;
        cplx acc{0.0, 0.0};
        for (std::size_t n = 0; n < ref.size(); ++n)
            acc += ref[n] * buf[static_cast<std::size_t>(d) + n];
        if (std::norm(acc) > best_mag) {
            best_mag = std::norm(acc);
            best = d;
        }
    }
    const long start = best - static_cast<long>(pad);
    res.timing = start > 0 ? static_cast<std::size_t>(start) : 0;
    return res;
}

void correct_cfo(std::span<cplx> stream, const OfdmNumerology& num, double cfo_subcarriers) {
    const double w = -2.0 * kPi * cfo_subcarriers / num.fft_size;
    for (std::size_t t = 0; t < stream.size(); ++t) stream[t] *= std::polar(1.0, w * static_cast<double>(t));
}

}  // namespace ris::link
