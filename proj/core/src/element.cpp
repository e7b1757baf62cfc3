// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/element.hpp"

#include <cmath>
#include <sstream>

#include "ristwin/errors.hpp"
#include "ristwin/units.hpp"

namespace ris {

namespace {

// code -> configuration and back
constexpr std::array<int, 4> kCodeToConfiguration{3, 1, 4, 2};
constexpr std::array<int, 4> kConfigurationToCode{1, 3, 0, 2};

}  // namespace

void PinDiodeModel::validate() const {
    if (!(r_on > 0.0) || !(l_series > 0.0) || !(c_off > 0.0) || !(r_off > 0.0)) {
        throw DomainError("PinDiodeModel: all component values must be strictly positive");
    }
}

std::complex<double> pin_impedance(const PinDiodeModel& model, DiodeState state, double frequency_hz) {
    model.validate();
    if (!(frequency_hz > 0.0)) {
        throw DomainError("pin_impedance: frequency must be positive");
    }
    const double omega = 2.0 * kPi * frequency_hz;
    if (state == DiodeState::On) {
        return {model.r_on, omega * model.l_series};
    }
    return {model.r_off, omega * model.l_series - 1.0 / (omega * model.c_off)};
}

ElementState ElementState::from_code(int code) {
    if (code < 0 || code >= kNumCodes) {
        throw DomainError("ElementState: code " + std::to_string(code) + " outside 0..3");
    }
    return ElementState(static_cast<std::uint8_t>(code));
}

ElementState ElementState::from_configuration(int configuration) {
    if (configuration < 1 || configuration > 4) {
        throw DomainError("ElementState: configuration " + std::to_string(configuration) + " outside 1..4");
    }
    return from_code(kConfigurationToCode[configuration - 1]);
}

int ElementState::code() const {
    if (is_masked()) throw DomainError("ElementState: masked element has no code");
    return value_;
}

int ElementState::configuration() const { return kCodeToConfiguration[code()]; }

PinVector state_to_pins(ElementState state) {
    if (state.is_masked()) throw DomainError("state_to_pins: masked element has no PIN settings");
    const int cfg = state.configuration();
    // Odd configurations switch PIN1 on; configurations 1 and 2 switch the
    // PIN3..PIN5 group on.
    const DiodeState pin1 = (cfg % 2 == 1) ? DiodeState::On : DiodeState::Off;
    const DiodeState pin2 = (pin1 == DiodeState::On) ? DiodeState::Off : DiodeState::On;
    const DiodeState group = (cfg <= 2) ? DiodeState::On : DiodeState::Off;
    return {pin1, pin2, group, group, group};
}

std::string to_string(ElementModelKind kind) {
    return kind == ElementModelKind::Measured ? "measured" : "ideal";
}

ElementModelKind parse_element_model_kind(const std::string& text) {
    if (text == "measured") return ElementModelKind::Measured;
    if (text == "ideal") return ElementModelKind::Ideal;
    throw DomainError("unknown element model kind '" + text + "' (expected measured|ideal)");
}

ElementModel::ElementModel()
    : ElementModel({TabulatedResponse{-205.5, -1.1}, TabulatedResponse{-383.2, -1.2},
                    TabulatedResponse{-290.2, -0.8}, TabulatedResponse{-110.3, -0.8}},
                   2.3e9, 2.0e9, 2.6e9) {}

ElementModel::ElementModel(std::array<TabulatedResponse, 4> table, double reference_hz, double band_low_hz,
                           double band_high_hz)
    : table_(table), reference_hz_(reference_hz), band_low_hz_(band_low_hz), band_high_hz_(band_high_hz) {
    if (!(reference_hz > 0.0) || !(band_low_hz > 0.0) || !(band_high_hz > band_low_hz) ||
        reference_hz < band_low_hz || reference_hz > band_high_hz) {
        throw DomainError("ElementModel: reference frequency must lie inside a positive band");
    }
    for (const auto& entry : table_) {
        if (entry.magnitude_db > 0.0) throw DomainError("ElementModel: passive element needs magnitude <= 0 dB");
    }
}

ElementModel ElementModel::rescaled_to(double reference_hz) const {
    const double s = reference_hz / reference_hz_;
    return ElementModel(table_, reference_hz, band_low_hz_ * s, band_high_hz_ * s);
}

const TabulatedResponse& ElementModel::tabulated(int configuration) const {
    if (configuration < 1 || configuration > 4) throw DomainError("ElementModel: configuration outside 1..4");
    return table_[configuration - 1];
}

double ElementModel::phase_deg(ElementState state, ElementModelKind kind) const {
    if (kind == ElementModelKind::Ideal) return 90.0 * state.code();
    return tabulated(state.configuration()).phase_deg;
}

double ElementModel::magnitude_db(ElementState state, ElementModelKind kind) const {
    if (kind == ElementModelKind::Ideal) {
        (void)state.code();
        return 0.0;
    }
    return tabulated(state.configuration()).magnitude_db;
}

void ElementModel::check_frequency(double frequency_hz, ElementModelKind kind) const {
    if (!(frequency_hz > 0.0)) throw DomainError("element response: frequency must be positive");
    if (kind == ElementModelKind::Measured &&
        (frequency_hz < band_low_hz_ * (1.0 - 1e-12) || frequency_hz > band_high_hz_ * (1.0 + 1e-12))) {
        std::ostringstream msg;
        msg << "element response: " << frequency_hz / 1e9 << " GHz outside the measured-model band ["
            << band_low_hz_ / 1e9 << ", " << band_high_hz_ / 1e9 << "] GHz";
        throw DomainError(msg.str());
    }
}

std::complex<double> ElementModel::response(ElementState state, double frequency_hz, ElementModelKind kind) const {
    check_frequency(frequency_hz, kind);
    const double mag = db_to_amplitude(magnitude_db(state, kind));
    return std::polar(mag, deg_to_rad(wrap_360(phase_deg(state, kind))));
}

std::array<double, 4> ElementModel::available_phases_deg(ElementModelKind kind) const {
    std::array<double, 4> out{};
    for (int c = 0; c < 4; ++c) out[c] = wrap_360(phase_deg(ElementState::from_code(c), kind));
    return out;
}

std::complex<double> element_response(ElementState state, double frequency_hz, ElementModelKind kind) {
    static const ElementModel model;
    return model.response(state, frequency_hz, kind);
}

}  // namespace ris
