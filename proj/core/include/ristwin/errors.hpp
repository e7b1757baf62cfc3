// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ris {

/// An argument outside the mathematical domain of an operation
/// (non-positive frequency, masked element, out-of-range index, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A malformed serialized object. `field()` names the offending header field
/// ("magic", "version", "rows", "cols", "length").
class FormatError : public std::runtime_error {
public:
    FormatError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Payload does not fit the configured frame.
class FramingError : public std::runtime_error {
public:
    FramingError(std::size_t requested_bits, std::size_t capacity_bits, const std::string& what)
        : std::runtime_error(what), requested_(requested_bits), capacity_(capacity_bits) {}

    std::size_t requested_bits() const noexcept { return requested_; }
    std::size_t capacity_bits() const noexcept { return capacity_; }

private:
    std::size_t requested_;
    std::size_t capacity_;
};

/// The synchronizer found no preamble above its detection threshold.
class NoFrameFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid link/coder configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Wraps an error raised inside one processing stage of the link chain.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace ris
