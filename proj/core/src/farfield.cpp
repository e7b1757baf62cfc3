// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "ristwin/errors.hpp"
#include "ristwin/units.hpp"

namespace ris {

namespace {

constexpr double kFloorPower = 1e-300;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return true;
}

// phi grid spans a full turn without repeating its first sample.
bool phi_is_periodic(const std::vector<double>& phi) {
    if (phi.size() < 2) return false;
    const double step = phi[1] - phi[0];
    return std::abs(phi.back() + step - (phi.front() + 360.0)) < 1e-6;
}

std::vector<double> phi_weights_rad(const std::vector<double>& phi) {
    const std::size_t n = phi.size();
    std::vector<double> w(n, 0.0);
    if (phi_is_periodic(phi)) {
        for (std::size_t j = 0; j < n; ++j) {
            const double next = (j + 1 < n) ? phi[j + 1] : phi[0] + 360.0;
            const double prev = (j > 0) ? phi[j - 1] : phi[n - 1] - 360.0;
            w[j] = deg_to_rad(0.5 * (next - prev));
        }
    } else {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double h = deg_to_rad(phi[j + 1] - phi[j]);
            w[j] += 0.5 * h;
            w[j + 1] += 0.5 * h;
        }
    }
    return w;
}

std::vector<double> theta_weights_rad(const std::vector<double>& theta) {
    const std::size_t n = theta.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = deg_to_rad(theta[i + 1] - theta[i]);
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] *= std::sin(deg_to_rad(theta[i]));
    return w;
}

std::size_t peak_index(const FarFieldPattern& p) {
    std::size_t best = 0;
    double best_v = -1.0;
    for (std::size_t i = 0; i < p.field.size(); ++i) {
        const double v = std::norm(p.field[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    return best;
}

// |E|^2 at grid row `it` and arbitrary phi, linear in phi between columns.
double power_at(const FarFieldPattern& p, std::size_t it, double phi_deg) {
    const auto& phi = p.grid.phi_deg;
    const std::size_t n = phi.size();
    const bool periodic = phi_is_periodic(phi);
    double x = phi_deg;
    if (periodic) {
        while (x < phi.front()) x += 360.0;
        while (x >= phi.front() + 360.0) x -= 360.0;
    }
    auto it_hi = std::lower_bound(phi.begin(), phi.end(), x);
    if (it_hi != phi.end() && std::abs(*it_hi - x) < 1e-9) {
        return std::norm(p.at(it, static_cast<std::size_t>(it_hi - phi.begin())));
    }
    std::size_t lo;
    std::size_t hi;
    double x_lo;
    double x_hi;
    if (it_hi == phi.end()) {
        if (!periodic) return std::norm(p.at(it, n - 1));
        lo = n - 1;
        hi = 0;
        x_lo = phi[n - 1];
        x_hi = phi[0] + 360.0;
    } else if (it_hi == phi.begin()) {
        return std::norm(p.at(it, 0));
    } else {
        hi = static_cast<std::size_t>(it_hi - phi.begin());
        lo = hi - 1;
        x_lo = phi[lo];
        x_hi = phi[hi];
    }
    const double t = (x - x_lo) / (x_hi - x_lo);
    return (1.0 - t) * std::norm(p.at(it, lo)) + t * std::norm(p.at(it, hi));
}

struct Cut {
    std::vector<double> angle;  // degrees along the cut
    std::vector<double> db;     // relative to the global peak
    std::size_t peak = 0;
};

// Plane cut through phi0: negative angles are theta in the phi0 + 180 half.
Cut plane_cut(const FarFieldPattern& p, double phi0, double peak_power) {
    Cut cut;
    const auto& th = p.grid.theta_deg;
    for (std::size_t i = th.size(); i-- > 0;) {
        if (th[i] == 0.0) continue;
        cut.angle.push_back(-th[i]);
        cut.db.push_back(power_to_db(std::max(power_at(p, i, phi0 + 180.0), kFloorPower) / peak_power));
    }
    for (std::size_t i = 0; i < th.size(); ++i) {
        cut.angle.push_back(th[i]);
        cut.db.push_back(power_to_db(std::max(power_at(p, i, phi0), kFloorPower) / peak_power));
    }
    return cut;
}

// Conical cut at fixed theta row, arc angle = (phi - phi0) sin(theta).
Cut conical_cut(const FarFieldPattern& p, std::size_t it, double phi0, double peak_power) {
    Cut cut;
    const auto& phi = p.grid.phi_deg;
    const double s = std::sin(deg_to_rad(p.grid.theta_deg[it]));
    std::vector<std::pair<double, double>> samples;
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const double off = wrap_180(phi[j] - phi0);
        samples.emplace_back(off * s, power_to_db(std::max(std::norm(p.at(it, j)), kFloorPower) / peak_power));
    }
    std::sort(samples.begin(), samples.end());
    for (const auto& [a, v] : samples) {
        cut.angle.push_back(a);
        cut.db.push_back(v);
    }
    return cut;
}

void locate_peak(Cut& cut) {
    cut.peak = static_cast<std::size_t>(std::max_element(cut.db.begin(), cut.db.end()) - cut.db.begin());
}

struct CutMetrics {
    double hpbw = 0.0;
    double sll = -std::numeric_limits<double>::infinity();
    bool valid = true;
};

CutMetrics analyse_cut(Cut cut) {
    locate_peak(cut);
    CutMetrics out;
    const auto& v = cut.db;
    const auto& a = cut.angle;
    const std::size_t n = v.size();
    const double level = v[cut.peak] - 3.0103;

    double left = a.front();
    std::size_t i = cut.peak;
    while (i > 0 && v[i - 1] >= level) --i;
    if (i == 0) {
        out.valid = false;
    } else {
        const double t = (v[i] - level) / (v[i] - v[i - 1]);
        left = a[i] - t * (a[i] - a[i - 1]);
    }
    double right = a.back();
    i = cut.peak;
    while (i + 1 < n && v[i + 1] >= level) ++i;
    if (i + 1 == n) {
        out.valid = false;
    } else {
        const double t = (v[i] - level) / (v[i] - v[i + 1]);
        right = a[i] + t * (a[i + 1] - a[i]);
    }
    out.hpbw = right - left;

    // Main lobe ends at the first local minimum on each side.
    std::size_t null_lo = cut.peak;
    while (null_lo > 0 && v[null_lo - 1] <= v[null_lo]) --null_lo;
    std::size_t null_hi = cut.peak;
    while (null_hi + 1 < n && v[null_hi + 1] <= v[null_hi]) ++null_hi;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (k >= null_lo && k <= null_hi) continue;
        if (v[k] >= v[k - 1] && v[k] >= v[k + 1]) out.sll = std::max(out.sll, v[k] - v[cut.peak]);
    }
    return out;
}

}  // namespace

AngleGrid AngleGrid::hemisphere(double theta_step_deg, double phi_step_deg) {
    if (!(theta_step_deg > 0.0) || !(phi_step_deg > 0.0)) throw DomainError("AngleGrid: steps must be positive");
    AngleGrid g;
    const int nt = static_cast<int>(std::lround(90.0 / theta_step_deg));
    const int np = static_cast<int>(std::lround(360.0 / phi_step_deg));
    if (std::abs(nt * theta_step_deg - 90.0) > 1e-9 || std::abs(np * phi_step_deg - 360.0) > 1e-9) {
        throw DomainError("AngleGrid: steps must divide 90 and 360 degrees");
    }
    for (int i = 0; i <= nt; ++i) g.theta_deg.push_back(90.0 * i / nt);
    for (int j = 0; j < np; ++j) g.phi_deg.push_back(360.0 * j / np);
    return g;
}

void AngleGrid::validate() const {
    if (theta_deg.empty() || phi_deg.empty()) throw DomainError("AngleGrid: empty grid");
    if (!strictly_increasing(theta_deg) || !strictly_increasing(phi_deg)) {
        throw DomainError("AngleGrid: grids must be strictly increasing");
    }
    if (theta_deg.front() < 0.0 || theta_deg.back() > 90.0) throw DomainError("AngleGrid: theta outside [0, 90]");
}

cplx feed_illumination(const SurfaceLayout& layout, int row, int col, double frequency_hz) {
    const Vec3 r = element_position(layout, row, col);
    const Vec3 ray = r - layout.feed_position;
    const double d = norm(ray);
    const Vec3 boresight = (-1.0 / norm(layout.feed_position)) * layout.feed_position;
    const double cos_f = dot(ray, boresight) / d;
    if (cos_f <= 0.0) return {0.0, 0.0};
    const double amp = std::pow(cos_f, layout.feed_exponent) / d;
    return std::polar(amp, -wavenumber(frequency_hz) * d);
}

std::vector<cplx> element_excitations(const SurfaceLayout& layout, const Codeword& codeword, double frequency_hz,
                                      ElementModelKind kind, const ElementModel& element) {
    layout.validate();
    codeword.check_consistent(layout);
    element.check_frequency(frequency_hz, kind);
    std::vector<cplx> a(layout.element_count(), cplx(0.0, 0.0));
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            const auto s = codeword.at(r, c);
            if (s.is_masked()) continue;
            a[static_cast<std::size_t>(r * layout.cols + c)] =
                feed_illumination(layout, r, c, frequency_hz) * element.response(s, frequency_hz, kind);
        }
    }
    return a;
}

namespace {

// sum_n a_n exp(j k r_n . u) with the row/column phase progressions factored.
cplx array_sum(const SurfaceLayout& layout, const std::vector<cplx>& a, double k, double ux, double uy,
               std::vector<cplx>& px, std::vector<cplx>& py) {
    const double x0 = -(layout.cols - 1) / 2.0 * layout.spacing;
    const double y0 = -(layout.rows - 1) / 2.0 * layout.spacing;
    const cplx step_x = std::polar(1.0, k * layout.spacing * ux);
    const cplx step_y = std::polar(1.0, k * layout.spacing * uy);
    px[0] = std::polar(1.0, k * x0 * ux);
    for (int c = 1; c < layout.cols; ++c) px[static_cast<std::size_t>(c)] = px[static_cast<std::size_t>(c - 1)] * step_x;
    py[0] = std::polar(1.0, k * y0 * uy);
    for (int r = 1; r < layout.rows; ++r) py[static_cast<std::size_t>(r)] = py[static_cast<std::size_t>(r - 1)] * step_y;
    cplx total = 0.0;
    for (int r = 0; r < layout.rows; ++r) {
        const cplx* row = a.data() + static_cast<std::ptrdiff_t>(r) * layout.cols;
        cplx acc = 0.0;
        for (int c = 0; c < layout.cols; ++c) acc += row[c] * px[static_cast<std::size_t>(c)];
        total += acc * py[static_cast<std::size_t>(r)];
    }
    return total;
}

}  // namespace

FarFieldPattern radiate_excitations(const SurfaceLayout& layout, const std::vector<cplx>& excitations,
                                    double frequency_hz, const AngleGrid& grid) {
    layout.validate();
    grid.validate();
    if (!(frequency_hz > 0.0)) throw DomainError("radiate: frequency must be positive");
    if (excitations.size() != layout.element_count()) throw DomainError("radiate: excitation count mismatch");
    FarFieldPattern p;
    p.grid = grid;
    p.frequency_hz = frequency_hz;
    p.field.assign(grid.size(), cplx(0.0, 0.0));
    std::ostringstream desc;
    desc << layout.rows << "x" << layout.cols << " spacing " << layout.spacing << " m, feed z " << layout.feed_position.z
         << " m, " << layout.mask.size() << " masked";
    p.description = desc.str();

    const double k = wavenumber(frequency_hz);
    std::vector<cplx> px(static_cast<std::size_t>(layout.cols));
    std::vector<cplx> py(static_cast<std::size_t>(layout.rows));
    std::vector<double> cos_phi(grid.phi_deg.size());
    std::vector<double> sin_phi(grid.phi_deg.size());
    for (std::size_t j = 0; j < grid.phi_deg.size(); ++j) {
        cos_phi[j] = std::cos(deg_to_rad(grid.phi_deg[j]));
        sin_phi[j] = std::sin(deg_to_rad(grid.phi_deg[j]));
    }
    for (std::size_t i = 0; i < grid.theta_deg.size(); ++i) {
        const double t = deg_to_rad(grid.theta_deg[i]);
        const double st = std::sin(t);
        const double elem = std::pow(std::max(std::cos(t), 0.0), layout.element_exponent);
        for (std::size_t j = 0; j < grid.phi_deg.size(); ++j) {
            p.at(i, j) = elem * array_sum(layout, excitations, k, st * cos_phi[j], st * sin_phi[j], px, py);
        }
    }
    return p;
}

cplx field_at(const SurfaceLayout& layout, const std::vector<cplx>& excitations, double frequency_hz,
              double theta_deg, double phi_deg) {
    if (excitations.size() != layout.element_count()) throw DomainError("field_at: excitation count mismatch");
    const Vec3 u = direction(theta_deg, phi_deg);
    std::vector<cplx> px(static_cast<std::size_t>(layout.cols));
    std::vector<cplx> py(static_cast<std::size_t>(layout.rows));
    const double elem = std::pow(std::max(u.z, 0.0), layout.element_exponent);
    return elem * array_sum(layout, excitations, wavenumber(frequency_hz), u.x, u.y, px, py);
}

FarFieldPattern radiate(const SurfaceLayout& layout, const Codeword& codeword, double frequency_hz,
                        const AngleGrid& grid, ElementModelKind kind, const ElementModel& element) {
    return radiate_excitations(layout, element_excitations(layout, codeword, frequency_hz, kind, element),
                               frequency_hz, grid);
}

Directivity directivity(const FarFieldPattern& pattern) {
    const auto& g = pattern.grid;
    g.validate();
    if (pattern.field.size() != g.size()) throw DomainError("directivity: sample count does not match the grid");
    if (std::abs(g.theta_deg.front()) > 1e-9 || std::abs(g.theta_deg.back() - 90.0) > 1e-9) {
        throw DomainError("directivity: theta grid must span [0, 90] degrees");
    }
    const bool periodic = phi_is_periodic(g.phi_deg);
    if (!periodic && std::abs(g.phi_deg.back() - g.phi_deg.front() - 360.0) > 1e-6) {
        throw DomainError("directivity: phi grid must cover a full turn");
    }
    for (std::size_t i = 1; i < g.theta_deg.size(); ++i) {
        if (g.theta_deg[i] - g.theta_deg[i - 1] > 1.0 + 1e-9) throw DomainError("directivity: theta step exceeds 1 degree");
    }
    for (std::size_t j = 1; j < g.phi_deg.size(); ++j) {
        if (g.phi_deg[j] - g.phi_deg[j - 1] > 1.0 + 1e-9) throw DomainError("directivity: phi step exceeds 1 degree");
    }

    const auto wt = theta_weights_rad(g.theta_deg);
    const auto wp = phi_weights_rad(g.phi_deg);
    double integral = 0.0;
    for (std::size_t i = 0; i < g.theta_deg.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.phi_deg.size(); ++j) row += wp[j] * std::norm(pattern.at(i, j));
        integral += wt[i] * row;
    }
    const std::size_t peak = peak_index(pattern);
    const double peak_power = std::norm(pattern.field[peak]);
    if (!(integral > 0.0) || !(peak_power > 0.0)) throw DomainError("directivity: pattern is identically zero");

    Directivity d;
    d.theta_index = peak / g.phi_deg.size();
    d.phi_index = peak % g.phi_deg.size();
    d.theta_deg = g.theta_deg[d.theta_index];
    d.phi_deg = g.phi_deg[d.phi_index];
    d.dbi = power_to_db(4.0 * kPi * peak_power / integral);
    return d;
}

double spillover_efficiency(const SurfaceLayout& layout) {
    layout.validate();
    const double q2 = 2.0 * layout.feed_exponent;
    const double total = 2.0 * kPi / (q2 + 1.0);
    const double half_x = layout.cols * layout.spacing / 2.0;
    const double half_y = layout.rows * layout.spacing / 2.0;
    const Vec3 f = layout.feed_position;
    const Vec3 boresight = (-1.0 / norm(f)) * f;
    constexpr int n = 400;
    const double hx = 2.0 * half_x / n;
    const double hy = 2.0 * half_y / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = -half_y + (i + 0.5) * hy;
        for (int j = 0; j < n; ++j) {
            const double x = -half_x + (j + 0.5) * hx;
            const Vec3 ray = Vec3{x, y, 0.0} - f;
            const double d = norm(ray);
            const double cos_f = dot(ray, boresight) / d;
            if (cos_f <= 0.0) continue;
            // solid angle of the patch seen from the feed: |f.z| dA / d^3
            acc += std::pow(cos_f, q2) * f.z / (d * d * d);
        }
    }
    return std::min(1.0, acc * hx * hy / total);
}

double element_loss_db(const SurfaceLayout& layout, const Codeword& codeword, double frequency_hz,
                       ElementModelKind kind, const ElementModel& element) {
    codeword.check_consistent(layout);
    element.check_frequency(frequency_hz, kind);
    double num = 0.0;
    double den = 0.0;
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            const auto s = codeword.at(r, c);
            if (s.is_masked()) continue;
            const double w = std::norm(feed_illumination(layout, r, c, frequency_hz));
            num += w * db_to_power(element.magnitude_db(s, kind));
            den += w;
        }
    }
    if (!(den > 0.0)) throw DomainError("element_loss_db: no illuminated element");
    return power_to_db(num / den);
}

GainBreakdown gain(const FarFieldPattern& pattern, const SurfaceLayout& layout, const Codeword& codeword,
                   ElementModelKind kind, bool include_spillover, const ElementModel& element) {
    const Directivity d = directivity(pattern);
    GainBreakdown g;
    g.directivity_dbi = d.dbi;
    g.peak_theta_deg = d.theta_deg;
    g.peak_phi_deg = d.phi_deg;
    g.element_loss_db = element_loss_db(layout, codeword, pattern.frequency_hz, kind, element);
    g.spillover_db = power_to_db(spillover_efficiency(layout));
    g.gain_without_spillover_dbi = g.directivity_dbi + g.element_loss_db;
    g.gain_with_spillover_dbi = g.gain_without_spillover_dbi + g.spillover_db;
    g.gain_dbi = include_spillover ? g.gain_with_spillover_dbi : g.gain_without_spillover_dbi;
    return g;
}

PatternMetrics metrics(const FarFieldPattern& pattern, const SurfaceLayout& layout) {
    const Directivity d = directivity(pattern);
    return metrics(pattern, layout, d.dbi);
}

PatternMetrics metrics(const FarFieldPattern& pattern, const SurfaceLayout& layout, double gain_dbi) {
    const Directivity d = directivity(pattern);
    PatternMetrics m;
    m.peak_theta_deg = d.theta_deg;
    m.peak_phi_deg = d.phi_deg;
    m.directivity_dbi = d.dbi;
    m.gain_dbi = gain_dbi;
    m.aperture_efficiency = aperture_efficiency(gain_dbi, layout.aperture_area(), pattern.frequency_hz);

    const double peak_power = std::norm(pattern.at(d.theta_index, d.phi_index));
    const auto& th = pattern.grid.theta_deg;
    if (d.theta_index + 1 == th.size()) m.valid = false;

    Cut first = plane_cut(pattern, d.phi_deg, peak_power);
    Cut second = (d.theta_index == 0) ? plane_cut(pattern, d.phi_deg + 90.0, peak_power)
                                      : conical_cut(pattern, d.theta_index, d.phi_deg, peak_power);
    const CutMetrics a = analyse_cut(std::move(first));
    const CutMetrics b = analyse_cut(std::move(second));
    m.hpbw_deg[0] = a.hpbw;
    m.hpbw_deg[1] = b.hpbw;
    m.sll_db[0] = a.sll;
    m.sll_db[1] = b.sll;
    m.sll_db_max = std::max(a.sll, b.sll);
    m.valid = m.valid && a.valid && b.valid;
    return m;
}

double aperture_efficiency(double gain_dbi, double aperture_area_m2, double frequency_hz) {
    if (!(aperture_area_m2 > 0.0) || !(frequency_hz > 0.0)) {
        throw DomainError("aperture_efficiency: area and frequency must be positive");
    }
    const double lambda = wavelength(frequency_hz);
    return db_to_power(gain_dbi) * lambda * lambda / (4.0 * kPi * aperture_area_m2);
}

SweepResult frequency_sweep(const SurfaceLayout& layout, const Codeword& codeword, double f_low_hz,
                            double f_high_hz, double step_hz, const PatternOptions& options) {
    if (!(f_low_hz > 0.0) || f_high_hz < f_low_hz) throw DomainError("frequency_sweep: invalid band");
    if (!(step_hz > 0.0) && f_high_hz > f_low_hz) throw DomainError("frequency_sweep: step must be positive");
    options.element.check_frequency(f_low_hz, options.kind);
    options.element.check_frequency(f_high_hz, options.kind);
    codeword.check_consistent(layout);

    const AngleGrid grid = AngleGrid::hemisphere(options.theta_step_deg, options.phi_step_deg);
    SweepResult out;
    const std::size_t n =
        f_high_hz > f_low_hz ? static_cast<std::size_t>(std::floor((f_high_hz - f_low_hz) / step_hz + 1e-6)) + 1 : 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = std::min(f_low_hz + static_cast<double>(i) * step_hz, f_high_hz);
        const auto pattern = radiate(layout, codeword, f, grid, options.kind, options.element);
        const auto g = gain(pattern, layout, codeword, options.kind, options.include_spillover, options.element);
        out.points.push_back({f, g.gain_dbi});
    }
    const auto peak = std::max_element(out.points.begin(), out.points.end(),
                                       [](const SweepPoint& a, const SweepPoint& b) { return a.gain_dbi < b.gain_dbi; });
    out.peak_frequency_hz = peak->frequency_hz;
    out.peak_gain_dbi = peak->gain_dbi;
    if (out.points.size() == 1) {
        out.degenerate = true;
        out.lower_edge_hz = out.upper_edge_hz = out.peak_frequency_hz;
        return out;
    }
    const double level = out.peak_gain_dbi - 1.0;
    const auto& pts = out.points;
    std::size_t i = static_cast<std::size_t>(peak - pts.begin());
    while (i > 0 && pts[i - 1].gain_dbi >= level) --i;
    if (i == 0) {
        out.clipped_low = true;
        out.lower_edge_hz = pts.front().frequency_hz;
    } else {
        const double t = (pts[i].gain_dbi - level) / (pts[i].gain_dbi - pts[i - 1].gain_dbi);
        out.lower_edge_hz = pts[i].frequency_hz - t * (pts[i].frequency_hz - pts[i - 1].frequency_hz);
    }
    i = static_cast<std::size_t>(peak - pts.begin());
    while (i + 1 < pts.size() && pts[i + 1].gain_dbi >= level) ++i;
    if (i + 1 == pts.size()) {
        out.clipped_high = true;
        out.upper_edge_hz = pts.back().frequency_hz;
    } else {
        const double t = (pts[i].gain_dbi - level) / (pts[i].gain_dbi - pts[i + 1].gain_dbi);
        out.upper_edge_hz = pts[i].frequency_hz + t * (pts[i + 1].frequency_hz - pts[i].frequency_hz);
    }
    out.bandwidth_hz = out.upper_edge_hz - out.lower_edge_hz;
    out.fractional_bandwidth = out.bandwidth_hz / layout.design_frequency;
    return out;
}

std::vector<ScanPoint> scan_study(const SurfaceLayout& layout, const std::vector<SteeringTarget>& angles,
                                  const PatternOptions& options) {
    const AngleGrid grid = AngleGrid::hemisphere(options.theta_step_deg, options.phi_step_deg);
    PencilOptions pencil;
    pencil.element = options.element;
    auto measure = [&](const SteeringTarget& t) {
        const Codeword cw = synthesize_pencil(layout, t, options.kind, pencil);
        const auto pattern = radiate(layout, cw, layout.design_frequency, grid, options.kind, options.element);
        return gain(pattern, layout, cw, options.kind, options.include_spillover, options.element);
    };
    const GainBreakdown broadside = measure({0.0, 0.0});
    std::vector<ScanPoint> out;
    for (const auto& t : angles) {
        const GainBreakdown g = (t.theta_deg == 0.0) ? broadside : measure(t);
        ScanPoint p;
        p.commanded = t;
        p.gain_dbi = g.gain_dbi;
        p.scan_loss_db = broadside.gain_dbi - g.gain_dbi;
        p.peak_theta_deg = g.peak_theta_deg;
        p.peak_phi_deg = g.peak_phi_deg;
        out.push_back(p);
    }
    return out;
}

double quantization_loss_closed_form(int bits) {
    if (bits == 0) return 0.0;
    const double x = kPi / static_cast<double>(1 << bits);
    return -amplitude_to_db(std::sin(x) / x);
}

std::vector<double> quantization_loss_samples(int bits, int trials, std::uint64_t seed, const SurfaceLayout& layout) {
    if (bits < 0 || bits > 8) throw DomainError("quantization_loss: bits must be 0 (continuous) or 1..8");
    if (trials < 100) throw DomainError("quantization_loss: at least 100 trials required");
    layout.validate();
    const double f = layout.design_frequency;
    const auto req = required_phases(layout, {0.0, 0.0});
    std::vector<cplx> illum(layout.element_count(), cplx(0.0, 0.0));
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            if (!layout.is_masked(r, c)) illum[static_cast<std::size_t>(r * layout.cols + c)] = feed_illumination(layout, r, c, f);
        }
    }
    const std::vector<double> levels = bits > 0 ? ideal_phase_set(bits) : std::vector<double>{};

    std::vector<double> losses(static_cast<std::size_t>(trials));
    std::vector<cplx> cont(illum.size());
    std::vector<cplx> quant(illum.size());
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(t))));
        const double offset = std::uniform_real_distribution<double>(0.0, 360.0)(rng);
        for (std::size_t i = 0; i < illum.size(); ++i) {
            if (std::isnan(req[i])) {
                cont[i] = quant[i] = 0.0;
                continue;
            }
            const double phase = wrap_360(req[i] + offset);
            cont[i] = illum[i] * std::polar(1.0, deg_to_rad(phase));
            const double q = bits > 0 ? levels[quantize_phase(phase, levels).index] : phase;
            quant[i] = illum[i] * std::polar(1.0, deg_to_rad(q));
        }
        const double ec = std::abs(field_at(layout, cont, f, 0.0, 0.0));
        const double eq = std::abs(field_at(layout, quant, f, 0.0, 0.0));
        losses[static_cast<std::size_t>(t)] = amplitude_to_db(ec / eq);
    }
    return losses;
}

QuantizationLoss quantization_loss(int bits, int trials, std::uint64_t seed, const SurfaceLayout& layout) {
    const auto s = quantization_loss_samples(bits, trials, seed, layout);
    QuantizationLoss out;
    out.bits = bits;
    out.trials = trials;
    double sum = 0.0;
    for (double v : s) sum += v;
    out.mean_loss_db = sum / static_cast<double>(s.size());
    double var = 0.0;
    for (double v : s) var += (v - out.mean_loss_db) * (v - out.mean_loss_db);
    out.std_db = s.size() > 1 ? std::sqrt(var / static_cast<double>(s.size() - 1)) : 0.0;
    out.closed_form_db = quantization_loss_closed_form(bits);
    return out;
}

std::string pattern_to_csv(const FarFieldPattern& pattern) {
    std::string out = "theta,phi,re,im,mag_db\n";
    char buf[160];
    for (std::size_t i = 0; i < pattern.grid.theta_deg.size(); ++i) {
        for (std::size_t j = 0; j < pattern.grid.phi_deg.size(); ++j) {
            const cplx e = pattern.at(i, j);
            const double mag = amplitude_to_db(std::max(std::abs(e), 1e-150));
            std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.12g,%.12g,%.6f\n", pattern.grid.theta_deg[i],
                          pattern.grid.phi_deg[j], e.real(), e.imag(), mag);
            out += buf;
        }
    }
    return out;
}

std::string metrics_to_text(const PatternMetrics& m, const GainBreakdown& g) {
    std::ostringstream out;
    out.precision(10);
    out << "peak_theta_deg = " << m.peak_theta_deg << '\n'
        << "peak_phi_deg = " << m.peak_phi_deg << '\n'
        << "directivity_dbi = " << m.directivity_dbi << '\n'
        << "gain_dbi = " << g.gain_dbi << '\n'
        << "gain_without_spillover_dbi = " << g.gain_without_spillover_dbi << '\n'
        << "gain_with_spillover_dbi = " << g.gain_with_spillover_dbi << '\n'
        << "element_loss_db = " << g.element_loss_db << '\n'
        << "spillover_db = " << g.spillover_db << '\n'
        << "hpbw_cut1_deg = " << m.hpbw_deg[0] << '\n'
        << "hpbw_cut2_deg = " << m.hpbw_deg[1] << '\n'
        << "sll_cut1_db = " << m.sll_db[0] << '\n'
        << "sll_cut2_db = " << m.sll_db[1] << '\n'
        << "sll_db = " << m.sll_db_max << '\n'
        << "aperture_efficiency = " << m.aperture_efficiency << '\n'
        << "valid = " << (m.valid ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace ris
