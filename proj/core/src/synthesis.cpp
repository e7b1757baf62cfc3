// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/synthesis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>

#include "ristwin/errors.hpp"
#include "ristwin/farfield.hpp"
#include "ristwin/units.hpp"

namespace ris {

namespace {

void check_target(const SteeringTarget& target, bool allow_beyond) {
    if (!(target.theta_deg >= 0.0 && target.theta_deg < 90.0)) {
        throw DomainError("steering target: theta must lie in [0, 90) degrees");
    }
    if (!allow_beyond && target.theta_deg > kMaxScanDeg + 1e-9) {
        throw DomainError("steering target: theta " + std::to_string(target.theta_deg) +
                          " exceeds the +-60 degree scan range");
    }
}

double required_phase_unchecked(const SurfaceLayout& layout, int row, int col, Vec3 u, double k) {
    const Vec3 r = element_position(layout, row, col);
    const double feed_path = norm(layout.feed_position - r);
    return wrap_360(rad_to_deg(k * feed_path - k * dot(r, u)));
}

}  // namespace

double required_phase(const SurfaceLayout& layout, int row, int col, const SteeringTarget& target,
                      double frequency_hz) {
    if (!layout.in_range(row, col)) throw DomainError("required_phase: element index out of range");
    if (layout.is_masked(row, col)) {
        throw DomainError("required_phase: element (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") is masked");
    }
    if (!(frequency_hz > 0.0)) throw DomainError("required_phase: frequency must be positive");
    check_target(target, true);
    return required_phase_unchecked(layout, row, col, direction(target.theta_deg, target.phi_deg),
                                    wavenumber(frequency_hz));
}

std::vector<double> required_phases(const SurfaceLayout& layout, const SteeringTarget& target) {
    layout.validate();
    check_target(target, true);
    const Vec3 u = direction(target.theta_deg, target.phi_deg);
    const double k = wavenumber(layout.design_frequency);
    std::vector<double> out(layout.element_count(), std::numeric_limits<double>::quiet_NaN());
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            if (!layout.is_masked(r, c)) out[static_cast<std::size_t>(r * layout.cols + c)] = required_phase_unchecked(layout, r, c, u, k);
        }
    }
    return out;
}

QuantizedPhase quantize_phase(double required_deg, std::span<const double> available_deg) {
    if (available_deg.empty()) throw DomainError("quantize_phase: no available phases");
    QuantizedPhase best{0, wrap_180(required_deg - available_deg[0])};
    for (std::size_t i = 1; i < available_deg.size(); ++i) {
        const double e = wrap_180(required_deg - available_deg[i]);
        if (std::abs(e) < std::abs(best.error_deg)) best = {i, e};
    }
    // wrap_180 maps an exact half-turn to -180; report it with positive sign
    // so the residual is symmetric with the +180 side.
    if (best.error_deg == -180.0) best.error_deg = 180.0;
    return best;
}

std::vector<double> ideal_phase_set(int bits) {
    if (bits < 1 || bits > 8) throw DomainError("ideal_phase_set: bits must lie in 1..8");
    const int n = 1 << bits;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = 360.0 * i / n;
    return out;
}

Codeword synthesize_pencil(const SurfaceLayout& layout, const SteeringTarget& target, ElementModelKind kind,
                           const PencilOptions& options) {
    layout.validate();
    check_target(target, options.allow_beyond_scan_limit);
    const auto available = options.element.available_phases_deg(kind);
    const auto phases = required_phases(layout, target);
    std::vector<ElementState> states(layout.element_count(), ElementState::masked());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (std::isnan(phases[i])) continue;
        states[i] = ElementState::from_code(static_cast<int>(quantize_phase(phases[i], available).index));
    }
    return Codeword(layout.rows, layout.cols, std::move(states));
}

std::vector<double> phase_residuals(const SurfaceLayout& layout, const Codeword& codeword,
                                    const SteeringTarget& target, ElementModelKind kind,
                                    const ElementModel& element) {
    codeword.check_consistent(layout);
    const auto phases = required_phases(layout, target);
    std::vector<double> out(phases.size(), std::numeric_limits<double>::quiet_NaN());
    const auto states = codeword.states();
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (states[i].is_masked()) continue;
        out[i] = wrap_180(phases[i] - wrap_360(element.phase_deg(states[i], kind)));
    }
    return out;
}

void ShapedBeamSpec::validate() const {
    if (theta_deg.empty() || phi_deg.empty()) throw DomainError("ShapedBeamSpec: empty grid");
    const std::size_t n = theta_deg.size() * phi_deg.size();
    if (target.size() != n || weight.size() != n) {
        throw DomainError("ShapedBeamSpec: target/weight sizes do not match the grid");
    }
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i] < 0.0 || weight[i] < 0.0 || !std::isfinite(target[i]) || !std::isfinite(weight[i])) {
            throw DomainError("ShapedBeamSpec: target and weight must be finite and non-negative");
        }
        if (target[i] > 0.0 && weight[i] > 0.0) any = true;
    }
    if (!any) throw DomainError("ShapedBeamSpec: mask has no weighted nonzero cell");
    for (double t : theta_deg) {
        if (t < 0.0 || t > 90.0) throw DomainError("ShapedBeamSpec: theta outside [0, 90]");
    }
    if (iteration_limit < 1) throw DomainError("ShapedBeamSpec: iteration limit must be >= 1");
    if (!(tolerance >= 0.0)) throw DomainError("ShapedBeamSpec: tolerance must be non-negative");
}

namespace {

// Weighted least-squares state for phase-only alternating projection.
// Pattern over the weighted cells is F = G x; the objective is
// sum_c w_c |F_c - E'_c|^2 with |E'_c| = alpha m_c.
class ProjectionProblem {
public:
    ProjectionProblem(std::vector<cplx> g, std::vector<double> w, std::vector<double> m, std::size_t cells,
                      std::size_t elements)
        : g_(std::move(g)), w_(std::move(w)), m_(std::move(m)), cells_(cells), elements_(elements),
          f_(cells), target_(cells), column_energy_(elements, 0.0) {
        for (std::size_t n = 0; n < elements_; ++n) {
            double e = 0.0;
            for (std::size_t c = 0; c < cells_; ++c) e += w_[c] * std::norm(g_[c * elements_ + n]);
            column_energy_[n] = e;
        }
        for (double v : w_) weight_sum_ += v;
    }

    void set_excitations(const std::vector<cplx>& x) {
        x_ = x;
        for (std::size_t c = 0; c < cells_; ++c) {
            cplx s = 0.0;
            for (std::size_t n = 0; n < elements_; ++n) s += g_[c * elements_ + n] * x_[n];
            f_[c] = s;
        }
    }

    // Optimal E' and alpha for the current pattern; returns the objective.
    double project() {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t c = 0; c < cells_; ++c) {
            num += w_[c] * m_[c] * std::abs(f_[c]);
            den += w_[c] * m_[c] * m_[c];
        }
        const double alpha = den > 0.0 ? num / den : 0.0;
        for (std::size_t c = 0; c < cells_; ++c) {
            const double a = std::abs(f_[c]);
            const cplx phase = a > 0.0 ? f_[c] / a : cplx(1.0, 0.0);
            target_[c] = alpha * m_[c] * phase;
        }
        return objective();
    }

    double objective() const {
        double j = 0.0;
        for (std::size_t c = 0; c < cells_; ++c) j += w_[c] * std::norm(f_[c] - target_[c]);
        return weight_sum_ > 0.0 ? j / weight_sum_ : 0.0;
    }

    // s_n = sum_c w_c conj(G_cn) (F_c - G_cn x_n - E'_c)
    cplx residual_projection(std::size_t n) const {
        cplx s = 0.0;
        for (std::size_t c = 0; c < cells_; ++c) {
            const cplx gcn = g_[c * elements_ + n];
            s += w_[c] * std::conj(gcn) * (f_[c] - gcn * x_[n] - target_[c]);
        }
        return s;
    }

    // Cost of choosing value v for element n, up to a constant.
    double coordinate_cost(std::size_t n, const cplx& s, const cplx& v) const {
        return std::norm(v) * column_energy_[n] + 2.0 * std::real(v * std::conj(s));
    }

    void update(std::size_t n, const cplx& v) {
        const cplx delta = v - x_[n];
        if (delta == cplx(0.0, 0.0)) return;
        for (std::size_t c = 0; c < cells_; ++c) f_[c] += g_[c * elements_ + n] * delta;
        x_[n] = v;
    }

    const std::vector<cplx>& excitations() const { return x_; }
    std::size_t elements() const { return elements_; }

private:
    std::vector<cplx> g_;
    std::vector<double> w_;
    std::vector<double> m_;
    std::size_t cells_;
    std::size_t elements_;
    std::vector<cplx> x_;
    std::vector<cplx> f_;
    std::vector<cplx> target_;
    std::vector<double> column_energy_;
    double weight_sum_ = 0.0;
};

bool converged(double previous, double current, double tolerance) {
    const double scale = std::max(std::abs(previous), 1e-300);
    return std::abs(previous - current) <= tolerance * scale || current <= tolerance * 1e-6;
}

}  // namespace

ShapedResult synthesize_shaped(const SurfaceLayout& layout, const ShapedBeamSpec& spec, ElementModelKind kind,
                               std::uint64_t seed, const ElementModel& element) {
    layout.validate();
    spec.validate();
    const double f = layout.design_frequency;
    const double k = wavenumber(f);
    element.check_frequency(f, kind);

    // Weighted centroid of the mask's nonzero cells gives the starting beam.
    Vec3 centroid{};
    const std::size_t nphi = spec.phi_deg.size();
    for (std::size_t it = 0; it < spec.theta_deg.size(); ++it) {
        for (std::size_t ip = 0; ip < nphi; ++ip) {
            const std::size_t i = it * nphi + ip;
            const double wm = spec.weight[i] * spec.target[i];
            if (wm > 0.0) centroid = centroid + wm * direction(spec.theta_deg[it], spec.phi_deg[ip]);
        }
    }
    SteeringTarget start{};
    if (norm(centroid) > 0.0) {
        const Vec3 u = (1.0 / norm(centroid)) * centroid;
        start.theta_deg = std::min(rad_to_deg(std::acos(std::clamp(u.z, -1.0, 1.0))), 89.0);
        start.phi_deg = std::hypot(u.x, u.y) > 1e-12 ? wrap_360(rad_to_deg(std::atan2(u.y, u.x))) : 0.0;
    }
    PencilOptions pencil_opts;
    pencil_opts.allow_beyond_scan_limit = true;
    pencil_opts.element = element;
    const Codeword pencil = synthesize_pencil(layout, start, kind, pencil_opts);

    // Active elements and their illumination.
    std::vector<GridIndex> active;
    std::vector<cplx> illum;
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            if (layout.is_masked(r, c)) continue;
            active.push_back({r, c});
            illum.push_back(feed_illumination(layout, r, c, f));
        }
    }
    const std::size_t n_el = active.size();

    std::vector<cplx> g;
    std::vector<double> w;
    std::vector<double> m;
    for (std::size_t it = 0; it < spec.theta_deg.size(); ++it) {
        const double elem = std::pow(std::cos(deg_to_rad(spec.theta_deg[it])), layout.element_exponent);
        for (std::size_t ip = 0; ip < nphi; ++ip) {
            const std::size_t i = it * nphi + ip;
            if (spec.weight[i] <= 0.0) continue;
            const Vec3 u = direction(spec.theta_deg[it], spec.phi_deg[ip]);
            for (std::size_t n = 0; n < n_el; ++n) {
                const Vec3 r = element_position(layout, active[n].row, active[n].col);
                g.push_back(elem * illum[n] * std::polar(1.0, k * dot(r, u)));
            }
            w.push_back(spec.weight[i]);
            m.push_back(spec.target[i]);
        }
    }
    const std::size_t cells = w.size();
    ProjectionProblem problem(std::move(g), std::move(w), std::move(m), cells, n_el);

    std::array<ElementState, 4> codes;
    std::array<cplx, 4> gammas;
    for (int c = 0; c < 4; ++c) {
        codes[static_cast<std::size_t>(c)] = ElementState::from_code(c);
        gammas[static_cast<std::size_t>(c)] = element.response(codes[static_cast<std::size_t>(c)], f, kind);
    }

    auto codeword_states = [&](const std::vector<int>& chosen) {
        std::vector<ElementState> states(layout.element_count(), ElementState::masked());
        for (std::size_t n = 0; n < n_el; ++n) {
            states[static_cast<std::size_t>(active[n].row * layout.cols + active[n].col)] =
                codes[static_cast<std::size_t>(chosen[n])];
        }
        return Codeword(layout.rows, layout.cols, std::move(states));
    };

    // Objective of the pencil start, used as the best-so-far reference.
    std::vector<int> pencil_codes(n_el);
    std::vector<cplx> x(n_el);
    for (std::size_t n = 0; n < n_el; ++n) {
        pencil_codes[n] = pencil.at(active[n].row, active[n].col).code();
        x[n] = gammas[static_cast<std::size_t>(pencil_codes[n])];
    }
    problem.set_excitations(x);
    const double pencil_objective = problem.project();

    ShapedResult result;
    result.codeword = pencil;
    result.final_objective = pencil_objective;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n_el);
    std::iota(order.begin(), order.end(), std::size_t{0});

    // Continuous phase-only stage.
    const auto req = required_phases(layout, start);
    for (std::size_t n = 0; n < n_el; ++n) {
        x[n] = std::polar(1.0, deg_to_rad(req[static_cast<std::size_t>(active[n].row * layout.cols + active[n].col)]));
    }
    problem.set_excitations(x);
    double previous = problem.project();
    result.continuous_objective.push_back(previous);
    bool done = previous <= 1e-30;
    for (int iter = 0; iter < spec.iteration_limit && !done; ++iter) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t n : order) {
            const cplx s = problem.residual_projection(n);
            const double a = std::abs(s);
            if (a > 0.0) {
                const cplx v = -s / a;
                if (problem.coordinate_cost(n, s, v) < problem.coordinate_cost(n, s, problem.excitations()[n])) {
                    problem.update(n, v);
                }
            }
        }
        const double current = problem.project();
        result.continuous_objective.push_back(current);
        ++result.iterations;
        done = converged(previous, current, spec.tolerance);
        previous = current;
    }

    // Quantized stage, starting from the nearest states to the continuous
    // phases.
    const auto available = element.available_phases_deg(kind);
    std::vector<int> chosen(n_el);
    for (std::size_t n = 0; n < n_el; ++n) {
        const double phase = wrap_360(rad_to_deg(std::arg(problem.excitations()[n])));
        chosen[n] = static_cast<int>(quantize_phase(phase, available).index);
        x[n] = gammas[static_cast<std::size_t>(chosen[n])];
    }
    problem.set_excitations(x);
    previous = problem.project();
    result.quantized_objective.push_back(previous);
    bool quantized_converged = previous <= 1e-30;
    for (int iter = 0; iter < spec.iteration_limit && !quantized_converged; ++iter) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t n : order) {
            const cplx s = problem.residual_projection(n);
            int best = chosen[n];
            double best_cost = problem.coordinate_cost(n, s, gammas[static_cast<std::size_t>(best)]);
            for (int c = 0; c < 4; ++c) {
                const double cost = problem.coordinate_cost(n, s, gammas[static_cast<std::size_t>(c)]);
                if (cost < best_cost - 1e-15 * std::abs(best_cost)) {
                    best = c;
                    best_cost = cost;
                }
            }
            if (best != chosen[n]) {
                chosen[n] = best;
                problem.update(n, gammas[static_cast<std::size_t>(best)]);
            }
        }
        const double current = problem.project();
        result.quantized_objective.push_back(current);
        ++result.iterations;
        quantized_converged = converged(previous, current, spec.tolerance);
        previous = current;
    }
    result.converged = done && quantized_converged;

    if (previous < pencil_objective) {
        result.codeword = codeword_states(chosen);
        result.final_objective = previous;
    } else {
        result.converged = result.converged || pencil_objective <= 1e-30;
    }
    return result;
}

}  // namespace ris
