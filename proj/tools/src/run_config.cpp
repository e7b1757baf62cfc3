// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ristwin/errors.hpp"

namespace ris::cli {

namespace {

// Thrown by value parsers; the caller attaches file, line and key.
struct BadValue {
    std::string reason;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw BadValue{"expected a number, got '" + v + "'"};
    return out;
}

long long to_integer(const std::string& v) {
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw BadValue{"expected an integer, got '" + v + "'"};
    return out;
}

int to_int(const std::string& v) {
    const long long x = to_integer(v);
    if (x < -2147483647LL || x > 2147483647LL) throw BadValue{"integer out of range: " + v};
    return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& v) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw BadValue{"expected an unsigned integer, got '" + v + "'"};
    return out;
}

bool to_bool(const std::string& v) {
    if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
    if (v == "off" || v == "false" || v == "no" || v == "0") return false;
    throw BadValue{"expected on/off, got '" + v + "'"};
}

std::vector<double> to_list(const std::string& v) {
    std::vector<double> out;
    std::string tok;
    std::istringstream in(v);
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(to_double(tok));
    }
    return out;
}

Vec3 to_vec3(const std::string& v) {
    std::istringstream in(v);
    std::vector<double> xs;
    std::string tok;
    while (in >> tok) xs.push_back(to_double(tok));
    if (xs.size() != 3) throw BadValue{"expected three numbers 'x y z'"};
    return {xs[0], xs[1], xs[2]};
}

// `default`, `none`, or whitespace-separated `row:col` pairs.
std::set<GridIndex> to_mask(const std::string& v) {
    if (v == "default") return SurfaceLayout::default_mask();
    if (v == "none") return {};
    std::set<GridIndex> out;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw BadValue{"mask entry '" + tok + "' is not row:col"};
        out.insert({to_int(tok.substr(0, colon)), to_int(tok.substr(colon + 1))});
    }
    return out;
}

template <typename F>
auto wrap(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw BadValue{e.what()};
    }
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        // surface
        t["surface.rows"] = [](RunConfig& c, const std::string& v) { c.surface.rows = to_int(v); };
        t["surface.cols"] = [](RunConfig& c, const std::string& v) { c.surface.cols = to_int(v); };
        t["surface.spacing_m"] = [](RunConfig& c, const std::string& v) { c.surface.spacing = to_double(v); };
        t["surface.feed_xyz_m"] = [](RunConfig& c, const std::string& v) { c.surface.feed_position = to_vec3(v); };
        t["surface.mask"] = [](RunConfig& c, const std::string& v) { c.surface.mask = to_mask(v); };
        t["surface.design_freq_hz"] = [](RunConfig& c, const std::string& v) { c.surface.design_frequency = to_double(v); };
        t["surface.q_f"] = [](RunConfig& c, const std::string& v) { c.surface.feed_exponent = to_double(v); };
        t["surface.q_e"] = [](RunConfig& c, const std::string& v) { c.surface.element_exponent = to_double(v); };
        // model
        t["model.element"] = [](RunConfig& c, const std::string& v) {
            c.model.element = wrap([&] { return parse_element_model_kind(v); });
        };
        t["model.spillover"] = [](RunConfig& c, const std::string& v) { c.model.spillover = to_bool(v); };
        // link
        t["link.carrier_hz"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.carrier_hz = to_double(v); };
        t["link.fft_size"] = [](RunConfig& c, const std::string& v) { c.link.config.numerology.fft_size = to_int(v); };
        t["link.used_subcarriers"] = [](RunConfig& c, const std::string& v) {
            c.link.config.numerology.used_subcarriers = to_int(v);
        };
        t["link.cp_length"] = [](RunConfig& c, const std::string& v) { c.link.config.numerology.cp_length = to_int(v); };
        t["link.subcarrier_spacing_hz"] = [](RunConfig& c, const std::string& v) {
            c.link.config.numerology.subcarrier_spacing_hz = to_double(v);
        };
        t["link.pilot_spacing"] = [](RunConfig& c, const std::string& v) { c.link.config.numerology.pilot_spacing = to_int(v); };
        t["link.modulation"] = [](RunConfig& c, const std::string& v) {
            c.link.config.modulation = wrap([&] { return link::parse_modulation(v); });
        };
        t["link.coder"] = [](RunConfig& c, const std::string& v) {
            if (v == "none") {
                c.link.config.coder = link::CoderSpec::none();
            } else if (v == "convolutional") {
                const int n = c.link.config.coder.kind == link::CoderSpec::Kind::None ? 2 : c.link.config.coder.outputs;
                const int k = c.link.config.coder.kind == link::CoderSpec::Kind::None ? 7 : c.link.config.coder.constraint_length;
                c.link.config.coder = link::CoderSpec::convolutional(n, k);
            } else {
                throw BadValue{"expected none or convolutional, got '" + v + "'"};
            }
        };
        t["link.code_rate"] = [](RunConfig& c, const std::string& v) {
            if (v == "1/2") c.link.config.coder.outputs = 2;
            else if (v == "1/3") c.link.config.coder.outputs = 3;
            else throw BadValue{"expected 1/2 or 1/3, got '" + v + "'"};
        };
        t["link.constraint_length"] = [](RunConfig& c, const std::string& v) {
            c.link.config.coder.constraint_length = to_int(v);
        };
        t["link.interleaver_rows"] = [](RunConfig& c, const std::string& v) { c.link.config.interleaver_rows = to_int(v); };
        t["link.interleaver_cols"] = [](RunConfig& c, const std::string& v) { c.link.config.interleaver_cols = to_int(v); };
        t["link.data_symbols"] = [](RunConfig& c, const std::string& v) { c.link.config.data_symbols_per_frame = to_int(v); };
        t["link.tx_power_dbm"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.tx_power_dbm = to_double(v); };
        t["link.distance_m"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.distance_m = to_double(v); };
        t["link.rx_gain_dbi"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.rx_gain_dbi = to_double(v); };
        t["link.rx_theta_deg"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.rx_theta_deg = to_double(v); };
        t["link.rx_phi_deg"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.rx_phi_deg = to_double(v); };
        t["link.ris_gain_dbi"] = [](RunConfig& c, const std::string& v) {
            if (v == "auto") c.link.config.channel.ris_gain_dbi.reset();
            else c.link.config.channel.ris_gain_dbi = to_double(v);
        };
        t["link.noise"] = [](RunConfig& c, const std::string& v) {
            c.link.config.channel.noise = wrap([&] { return link::parse_noise_mode(v); });
        };
        t["link.snr_db"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.snr_db = to_double(v); };
        t["link.noise_figure_db"] = [](RunConfig& c, const std::string& v) {
            c.link.config.channel.noise_figure_db = to_double(v);
        };
        t["link.cfo_subcarriers"] = [](RunConfig& c, const std::string& v) {
            c.link.config.channel.cfo_subcarriers = to_double(v);
        };
        t["link.timing_offset"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.timing_offset = to_int(v); };
        t["link.seed"] = [](RunConfig& c, const std::string& v) { c.link.config.channel.seed = to_u64(v); };
        t["link.decoder_input"] = [](RunConfig& c, const std::string& v) {
            c.link.config.decoder_input = wrap([&] { return link::parse_decoder_input(v); });
        };
        t["link.payload_bits"] = [](RunConfig& c, const std::string& v) {
            const long long n = to_integer(v);
            if (n <= 0) throw BadValue{"payload must be positive"};
            c.link.payload_bits = static_cast<std::size_t>(n);
        };
        t["link.payload_seed"] = [](RunConfig& c, const std::string& v) { c.link.payload_seed = to_u64(v); };
        t["link.snr_list_db"] = [](RunConfig& c, const std::string& v) { c.link.snr_list_db = to_list(v); };
        // output
        t["output.dir"] = [](RunConfig& c, const std::string& v) { c.output.dir = v; };
        t["output.theta_step_deg"] = [](RunConfig& c, const std::string& v) { c.output.theta_step_deg = to_double(v); };
        t["output.phi_step_deg"] = [](RunConfig& c, const std::string& v) { c.output.phi_step_deg = to_double(v); };
        t["output.sweep_start_hz"] = [](RunConfig& c, const std::string& v) { c.output.sweep_start_hz = to_double(v); };
        t["output.sweep_stop_hz"] = [](RunConfig& c, const std::string& v) { c.output.sweep_stop_hz = to_double(v); };
        t["output.sweep_step_hz"] = [](RunConfig& c, const std::string& v) { c.output.sweep_step_hz = to_double(v); };
        t["output.scan_angles_deg"] = [](RunConfig& c, const std::string& v) { c.output.scan_angles_deg = to_list(v); };
        t["output.scan_phi_deg"] = [](RunConfig& c, const std::string& v) { c.output.scan_phi_deg = to_double(v); };
        t["output.quantloss_trials"] = [](RunConfig& c, const std::string& v) { c.output.quantloss_trials = to_int(v); };
        t["output.quantloss_seed"] = [](RunConfig& c, const std::string& v) { c.output.quantloss_seed = to_u64(v); };
        return t;
    }();
    return table;
}

}  // namespace

ConfigParseError::ConfigParseError(std::string file, int line, std::string key, const std::string& reason)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + (key.empty() ? std::string() : key + ": ") + reason),
      file_(std::move(file)),
      line_(line),
      key_(std::move(key)) {}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigParseError(source, line_no, "", "expected 'section.key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& table = setters();
        const auto it = table.find(key);
        if (it == table.end()) {
            const bool dotted = key.find('.') != std::string::npos;
            throw ConfigParseError(source, line_no, key, dotted ? "unknown key" : "key must be 'section.key'");
        }
        if (const auto prev = seen.find(key); prev != seen.end()) {
            throw ConfigParseError(source, line_no, key, "duplicate key (first set on line " + std::to_string(prev->second) + ")");
        }
        seen[key] = line_no;
        if (value.empty()) throw ConfigParseError(source, line_no, key, "missing value");
        try {
            it->second(cfg, value);
        } catch (const BadValue& e) {
            throw ConfigParseError(source, line_no, key, e.reason);
        }
    }

    // Cross-field invariants. The culprit is not always one key, so cite the
    // last line that touched the section; 0 when everything was defaulted.
    auto line_of = [&](const std::string& key) { return seen.count(key) ? seen[key] : 0; };
    auto section_line = [&](const std::string& prefix) {
        int line = 0;
        for (const auto& [k, l] : seen)
            if (k.rfind(prefix, 0) == 0) line = std::max(line, l);
        return line;
    };
    try {
        cfg.surface.validate();
    } catch (const std::exception& e) {
        throw ConfigParseError(source, section_line("surface."), "surface", e.what());
    }
    try {
        cfg.link.config.validate();
    } catch (const std::exception& e) {
        throw ConfigParseError(source, section_line("link."), "link", e.what());
    }
    if (!(cfg.output.theta_step_deg > 0.0) || !(cfg.output.phi_step_deg > 0.0)) {
        throw ConfigParseError(source, section_line("output."), "output", "grid steps must be positive");
    }
    if (cfg.output.quantloss_trials < 100) {
        throw ConfigParseError(source, line_of("output.quantloss_trials"), "output.quantloss_trials", "at least 100 trials required");
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError(path, 0, "", "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str(), path);
}

std::vector<std::string> known_keys() {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
}

}  // namespace ris::cli
