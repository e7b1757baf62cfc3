// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ristwin/element.hpp"
#include "ristwin/link/link.hpp"
#include "ristwin/surface.hpp"

namespace ris::cli {

/// Parse failure; `what()` reads "<file>:<line>: <key>: <reason>".
class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(std::string file, int line, std::string key, const std::string& reason);

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::string file_;
    int line_;
    std::string key_;
};

struct ModelSection {
    ElementModelKind element = ElementModelKind::Measured;
    bool spillover = true;
};

struct OutputSection {
    std::string dir = ".";
    double theta_step_deg = 0.5;
    double phi_step_deg = 0.5;
    double sweep_start_hz = 2.0e9;
    double sweep_stop_hz = 2.6e9;
    double sweep_step_hz = 10e6;
    std::vector<double> scan_angles_deg{0.0, 20.0, 40.0, 60.0};
    double scan_phi_deg = 0.0;
    int quantloss_trials = 10000;
    std::uint64_t quantloss_seed = 1;
};

struct LinkSection {
    link::LinkConfig config{};
    std::size_t payload_bits = 100000;
    std::uint64_t payload_seed = 7;
    std::vector<double> snr_list_db;  // empty: single run at channel settings
};

/// Every key has a default equal to the 2.3 GHz prototype.
struct RunConfig {
    SurfaceLayout surface{};
    ModelSection model{};
    LinkSection link{};
    OutputSection output{};
};

/// Grammar: one `section.key = value` per line; `#` starts a comment; blank
/// lines are ignored. Unknown sections or keys are errors. `source` names the
/// file in error messages.
RunConfig parse_run_config(const std::string& text, const std::string& source = "<config>");

RunConfig load_run_config(const std::string& path);

/// All recognised keys, `section.key`, sorted.
std::vector<std::string> known_keys();

}  // namespace ris::cli
