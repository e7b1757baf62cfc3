// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace ris {

enum class DiodeState : std::uint8_t { Off = 0, On = 1 };

/// Lumped equivalent circuit of the switching PIN diode.
/// ON: r_on in series with l_series. OFF: c_off, r_off and l_series in series.
struct PinDiodeModel {
    double r_on = 0.8;          // ohm
    double l_series = 780e-12;  // H
    double c_off = 202e-15;     // F
    double r_off = 10.0;        // ohm

    /// Throws DomainError unless every component value is strictly positive.
    void validate() const;
};

std::complex<double> pin_impedance(const PinDiodeModel& model, DiodeState state, double frequency_hz);

/// One element configuration, identified by a logical 2-bit code, or MASKED.
///
/// Logical codes follow ascending tabulated phase modulo 360 degrees:
///
///   code 0 -> Configuration 3
///   code 1 -> Configuration 1
///   code 2 -> Configuration 4
///   code 3 -> Configuration 2
class ElementState {
public:
    static constexpr std::uint8_t kMaskedValue = 0xFF;
    static constexpr int kNumCodes = 4;

    constexpr ElementState() = default;

    /// Throws DomainError for codes outside 0..3.
    static ElementState from_code(int code);
    /// Configuration number 1..4 as labelled in the PIN-state table.
    static ElementState from_configuration(int configuration);
    static constexpr ElementState masked() { return ElementState(kMaskedValue); }

    constexpr bool is_masked() const { return value_ == kMaskedValue; }
    /// Throws DomainError when masked.
    int code() const;
    int configuration() const;

    constexpr std::uint8_t raw() const { return value_; }

    friend constexpr bool operator==(ElementState, ElementState) = default;

private:
    constexpr explicit ElementState(std::uint8_t v) : value_(v) {}
    std::uint8_t value_ = 0;
};

using PinVector = std::array<DiodeState, 5>;

/// PIN1..PIN5 settings for a state. Throws DomainError for MASKED.
PinVector state_to_pins(ElementState state);

enum class ElementModelKind { Measured, Ideal };

std::string to_string(ElementModelKind kind);
/// Accepts "measured" or "ideal"; throws DomainError otherwise.
ElementModelKind parse_element_model_kind(const std::string& text);

/// Tabulated response of one configuration: phase as printed (not wrapped) and
/// magnitude in dB.
struct TabulatedResponse {
    double phase_deg;
    double magnitude_db;
};

/// Reflection response of the element for every configuration.
///
/// The measured kind holds a frequency-flat table over [band_low, band_high];
/// the ideal kind returns unit magnitude at exact 90 degree steps and is valid
/// at any positive frequency.
class ElementModel {
public:
    /// Table of simulated responses at 2.3 GHz, valid over 2.0..2.6 GHz.
    ElementModel();

    /// `table` is indexed by configuration number minus one.
    ElementModel(std::array<TabulatedResponse, 4> table, double reference_hz, double band_low_hz,
                 double band_high_hz);

    /// Same table re-anchored at a new reference frequency, band scaled
    /// proportionally.
    ElementModel rescaled_to(double reference_hz) const;

    const TabulatedResponse& tabulated(int configuration) const;
    double reference_hz() const { return reference_hz_; }
    double band_low_hz() const { return band_low_hz_; }
    double band_high_hz() const { return band_high_hz_; }

    /// Phase in degrees as stored (measured: unwrapped table value; ideal:
    /// 90 * code). Throws DomainError for MASKED.
    double phase_deg(ElementState state, ElementModelKind kind) const;
    double magnitude_db(ElementState state, ElementModelKind kind) const;

    /// Throws DomainError naming the band if the measured kind is queried
    /// outside its validity band, or for non-positive frequency.
    void check_frequency(double frequency_hz, ElementModelKind kind) const;

    std::complex<double> response(ElementState state, double frequency_hz, ElementModelKind kind) const;

    /// Phases of codes 0..3 reduced to [0, 360).
    std::array<double, 4> available_phases_deg(ElementModelKind kind) const;

private:
    std::array<TabulatedResponse, 4> table_;
    double reference_hz_;
    double band_low_hz_;
    double band_high_hz_;
};

/// Response using the default 2.3 GHz model.
std::complex<double> element_response(ElementState state, double frequency_hz, ElementModelKind kind);

}  // namespace ris
