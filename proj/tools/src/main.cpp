// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "ristwin/errors.hpp"
#include "ristwin/farfield.hpp"
#include "ristwin/link/link.hpp"
#include "ristwin/surface.hpp"
#include "ristwin/synthesis.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace ris;

namespace {

// Message prefix for the failing stage; set by each subcommand.
std::string g_stage = "cli";

struct Common {
    std::string config_path;
    std::string out_dir;
};

cli::RunConfig load(const Common& c) {
    g_stage = "config";
    cli::RunConfig cfg = c.config_path.empty() ? cli::RunConfig{} : cli::load_run_config(c.config_path);
    if (!c.out_dir.empty()) cfg.output.dir = c.out_dir;
    fs::create_directories(cfg.output.dir);
    return cfg;
}

ElementModel element_for(const cli::RunConfig& cfg) { return ElementModel{}.rescaled_to(cfg.surface.design_frequency); }

PatternOptions pattern_options(const cli::RunConfig& cfg) {
    PatternOptions o;
    o.kind = cfg.model.element;
    o.element = element_for(cfg);
    o.include_spillover = cfg.model.spillover;
    o.theta_step_deg = cfg.output.theta_step_deg;
    o.phi_step_deg = cfg.output.phi_step_deg;
    return o;
}

std::string out_path(const cli::RunConfig& cfg, const std::string& name) { return (fs::path(cfg.output.dir) / name).string(); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// Codeword from a text file, or the broadside pencil beam when no file is given.
Codeword codeword_or_broadside(const cli::RunConfig& cfg, const std::string& path) {
    if (!path.empty()) {
        Codeword cw = codeword_from_text(read_file(path));
        cw.check_consistent(cfg.surface);
        return cw;
    }
    PencilOptions po;
    po.element = element_for(cfg);
    return synthesize_pencil(cfg.surface, SteeringTarget{}, cfg.model.element, po);
}

std::string fmt(double v, int prec = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

void save_codeword(const cli::RunConfig& cfg, const Codeword& cw, const std::string& stem) {
    write_text(out_path(cfg, stem + ".txt"), codeword_to_text(cw));
    write_bytes(out_path(cfg, stem + ".bin"), encode_bias_frame(cw));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ristwin: reconfigurable-surface beamforming and OFDM link twin"};
    app.require_subcommand(1);
    Common common;
    app.add_option("-c,--config", common.config_path, "key-value configuration file");
    app.add_option("-o,--out-dir", common.out_dir, "output directory (overrides output.dir)");

    // steer
    double theta = 0.0, phi = 0.0;
    bool beyond = false;
    auto* steer = app.add_subcommand("steer", "pencil-beam codeword and bias frame");
    steer->add_option("--theta", theta, "elevation from broadside, degrees");
    steer->add_option("--phi", phi, "azimuth, degrees");
    steer->add_flag("--allow-beyond-60", beyond, "permit targets beyond the 60 degree scan limit");
    steer->callback([&] {
        auto cfg = load(common);
        g_stage = "steer";
        PencilOptions po;
        po.element = element_for(cfg);
        po.allow_beyond_scan_limit = beyond;
        const Codeword cw = synthesize_pencil(cfg.surface, {theta, phi}, cfg.model.element, po);
        save_codeword(cfg, cw, "codeword");
        std::cout << "steer: theta=" << fmt(theta, 1) << " phi=" << fmt(phi, 1) << " -> " << out_path(cfg, "codeword.txt")
                  << ", " << out_path(cfg, "codeword.bin") << '\n';
    });

    // shape
    double half_width = 10.0;
    int iterations = 60;
    std::uint64_t shape_seed = 1;
    auto* shape = app.add_subcommand("shape", "conical flat-top beam by phase-only alternating projection");
    shape->add_option("--half-width", half_width, "flat-top half width in theta, degrees");
    shape->add_option("--iterations", iterations, "iteration limit");
    shape->add_option("--seed", shape_seed, "element visiting-order seed");
    shape->callback([&] {
        auto cfg = load(common);
        g_stage = "shape";
        ShapedBeamSpec spec;
        spec.iteration_limit = iterations;
        // Conical flat top around broadside; a 5 degree unweighted transition.
        for (double t = 0.0; t <= half_width + 30.0; t += 1.0) spec.theta_deg.push_back(t);
        for (double p = 0.0; p < 360.0; p += 15.0) spec.phi_deg.push_back(p);
        for (double t : spec.theta_deg) {
            const bool inside = t <= half_width;
            const bool guard = !inside && t < half_width + 5.0;
            for (std::size_t ip = 0; ip < spec.phi_deg.size(); ++ip) {
                spec.target.push_back(inside ? 1.0 : 0.0);
                spec.weight.push_back(guard ? 0.0 : 1.0);
            }
        }
        const ShapedResult r = synthesize_shaped(cfg.surface, spec, cfg.model.element, shape_seed, element_for(cfg));
        save_codeword(cfg, r.codeword, "codeword");
        // Peak-to-trough ripple over the flat-top cone, shaped versus pencil.
        const double f = cfg.surface.design_frequency;
        auto ripple_db = [&](const Codeword& cw) {
            const auto ex = element_excitations(cfg.surface, cw, f, cfg.model.element, element_for(cfg));
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (double t = 0.0; t <= half_width; t += 1.0) {
                for (double p : spec.phi_deg) {
                    const double a = std::abs(field_at(cfg.surface, ex, f, t, p));
                    lo = std::min(lo, a);
                    hi = std::max(hi, a);
                }
            }
            return amplitude_to_db(hi / std::max(lo, 1e-300));
        };
        const Codeword pencil = synthesize_pencil(cfg.surface, {0.0, 0.0}, cfg.model.element, {false, element_for(cfg)});
        std::ostringstream rep;
        rep << "iterations = " << r.iterations << "\nconverged = " << (r.converged ? "true" : "false")
            << "\nfinal_objective = " << r.final_objective << "\nripple_db = " << ripple_db(r.codeword)
            << "\npencil_ripple_db = " << ripple_db(pencil) << '\n';
        write_text(out_path(cfg, "shape.txt"), rep.str());
        std::cout << "shape: " << r.iterations << " iterations, objective " << r.final_objective << " -> "
                  << out_path(cfg, "codeword.txt") << '\n';
    });

    // pattern / metrics share the optional codeword input
    std::string pattern_cw, metrics_cw, sweep_cw;
    auto* pattern = app.add_subcommand("pattern", "far-field pattern as CSV");
    pattern->add_option("--codeword", pattern_cw, "codeword text file (default: broadside)");
    pattern->callback([&] {
        auto cfg = load(common);
        g_stage = "pattern";
        const Codeword cw = codeword_or_broadside(cfg, pattern_cw);
        const auto po = pattern_options(cfg);
        const auto pat = radiate(cfg.surface, cw, cfg.surface.design_frequency,
                                 AngleGrid::hemisphere(po.theta_step_deg, po.phi_step_deg), po.kind, po.element);
        write_text(out_path(cfg, "pattern.csv"), pattern_to_csv(pat));
        std::cout << "pattern: " << pat.grid.size() << " samples -> " << out_path(cfg, "pattern.csv") << '\n';
    });

    auto* metrics_cmd = app.add_subcommand("metrics", "gain, beamwidth and sidelobe report");
    metrics_cmd->add_option("--codeword", metrics_cw, "codeword text file (default: broadside)");
    metrics_cmd->callback([&] {
        auto cfg = load(common);
        g_stage = "metrics";
        const Codeword cw = codeword_or_broadside(cfg, metrics_cw);
        const auto po = pattern_options(cfg);
        const double f = cfg.surface.design_frequency;
        const auto pat = radiate(cfg.surface, cw, f, AngleGrid::hemisphere(po.theta_step_deg, po.phi_step_deg), po.kind,
                                 po.element);
        const GainBreakdown g = gain(pat, cfg.surface, cw, po.kind, po.include_spillover, po.element);
        const PatternMetrics m = metrics(pat, cfg.surface, g.gain_dbi);
        write_text(out_path(cfg, "metrics.txt"), metrics_to_text(m, g));
        std::cout << "metrics: gain " << fmt(g.gain_dbi, 2) << " dBi, HPBW " << fmt(m.hpbw_deg[0], 2) << "/"
                  << fmt(m.hpbw_deg[1], 2) << " deg, SLL " << fmt(m.sll_db_max, 2) << " dB -> "
                  << out_path(cfg, "metrics.txt") << '\n';
    });

    auto* sweep = app.add_subcommand("sweep", "gain versus frequency with 1-dB bandwidth");
    sweep->add_option("--codeword", sweep_cw, "codeword text file (default: broadside)");
    sweep->callback([&] {
        auto cfg = load(common);
        g_stage = "sweep";
        const Codeword cw = codeword_or_broadside(cfg, sweep_cw);
        const SweepResult r = frequency_sweep(cfg.surface, cw, cfg.output.sweep_start_hz, cfg.output.sweep_stop_hz,
                                              cfg.output.sweep_step_hz, pattern_options(cfg));
        std::ostringstream csv;
        csv.precision(10);
        csv << "freq_hz,gain_dbi\n";
        for (const auto& p : r.points) csv << p.frequency_hz << ',' << p.gain_dbi << '\n';
        write_text(out_path(cfg, "sweep.csv"), csv.str());
        std::cout << "sweep: peak " << fmt(r.peak_gain_dbi, 2) << " dBi, 1-dB bandwidth " << fmt(r.bandwidth_hz / 1e6, 1)
                  << " MHz (" << fmt(100.0 * r.fractional_bandwidth, 1) << "%" << (r.clipped_low || r.clipped_high ? ", clipped" : "")
                  << ") -> " << out_path(cfg, "sweep.csv") << '\n';
    });

    auto* scan = app.add_subcommand("scan", "scan loss over the configured angles");
    scan->callback([&] {
        auto cfg = load(common);
        g_stage = "scan";
        std::vector<SteeringTarget> angles;
        for (double t : cfg.output.scan_angles_deg) angles.push_back({t, cfg.output.scan_phi_deg});
        const auto pts = scan_study(cfg.surface, angles, pattern_options(cfg));
        std::ostringstream csv;
        csv.precision(10);
        csv << "theta_deg,gain_dbi,loss_db\n";
        for (const auto& p : pts) csv << p.commanded.theta_deg << ',' << p.gain_dbi << ',' << p.scan_loss_db << '\n';
        write_text(out_path(cfg, "scan.csv"), csv.str());
        std::cout << "scan: " << pts.size() << " angles, max loss " << fmt(pts.empty() ? 0.0 : pts.back().scan_loss_db, 2)
                  << " dB -> " << out_path(cfg, "scan.csv") << '\n';
    });

    auto* ql = app.add_subcommand("quantloss", "Monte-Carlo phase quantization loss");
    ql->callback([&] {
        auto cfg = load(common);
        g_stage = "quantloss";
        std::ostringstream csv;
        csv.precision(10);
        csv << "bits,mean_loss_db,std_db,closed_form_db\n";
        std::string summary;
        for (int bits : {1, 2}) {
            const QuantizationLoss q = quantization_loss(bits, cfg.output.quantloss_trials, cfg.output.quantloss_seed, cfg.surface);
            csv << q.bits << ',' << q.mean_loss_db << ',' << q.std_db << ',' << q.closed_form_db << '\n';
            summary += " " + std::to_string(bits) + "-bit " + fmt(q.mean_loss_db, 2) + " dB";
        }
        write_text(out_path(cfg, "quantloss.csv"), csv.str());
        std::cout << "quantloss:" << summary << " -> " << out_path(cfg, "quantloss.csv") << '\n';
    });

    std::string link_cw;
    auto* lk = app.add_subcommand("link", "end-to-end OFDM link run or SNR sweep");
    lk->add_option("--codeword", link_cw, "codeword text file (default: broadside)");
    lk->callback([&] {
        auto cfg = load(common);
        g_stage = "link";
        const Codeword cw = codeword_or_broadside(cfg, link_cw);
        const auto payload = link::random_payload(cfg.link.payload_bits, cfg.link.payload_seed);
        if (cfg.link.snr_list_db.empty()) {
            const link::LinkReport r = link::run_link(cfg.link.config, payload, &cfg.surface, &cw);
            write_text(out_path(cfg, "link.txt"), link::report_to_text(r));
            std::cout << "link: raw BER " << r.raw_ber << ", coded BER " << r.coded_ber << ", EVM " << fmt(r.evm_db, 2)
                      << " dB, rx " << fmt(r.received_power_dbm, 2) << " dBm -> " << out_path(cfg, "link.txt") << '\n';
        } else {
            const auto pts = link::snr_sweep(cfg.link.config, cfg.link.snr_list_db, payload, &cfg.surface, &cw);
            write_text(out_path(cfg, "link.csv"), link::sweep_to_csv(pts));
            std::cout << "link: " << pts.size() << " SNR points -> " << out_path(cfg, "link.csv") << '\n';
        }
    });

    std::string enc_in, enc_out = "codeword.bin";
    auto* enc = app.add_subcommand("bias-encode", "codeword text file to bias frame");
    enc->add_option("input", enc_in, "codeword text file")->required();
    enc->add_option("output", enc_out, "bias frame file (relative to the output directory)");
    enc->callback([&] {
        auto cfg = load(common);
        g_stage = "bias-encode";
        const Codeword cw = codeword_from_text(read_file(enc_in));
        cw.check_consistent(cfg.surface);
        const auto frame = encode_bias_frame(cw);
        write_bytes(out_path(cfg, enc_out), frame);
        std::cout << "bias-encode: " << frame.size() << " bytes -> " << out_path(cfg, enc_out) << '\n';
    });

    std::string dec_in, dec_out = "decoded.txt";
    auto* dec = app.add_subcommand("bias-decode", "bias frame to codeword text file");
    dec->add_option("input", dec_in, "bias frame file")->required();
    dec->add_option("output", dec_out, "codeword text file (relative to the output directory)");
    dec->callback([&] {
        auto cfg = load(common);
        g_stage = "bias-decode";
        const std::string bytes = read_file(dec_in);
        const std::vector<std::uint8_t> frame(bytes.begin(), bytes.end());
        const Codeword cw = decode_bias_frame(frame, cfg.surface);
        write_text(out_path(cfg, dec_out), codeword_to_text(cw));
        std::cout << "bias-decode: " << cw.rows() << "x" << cw.cols() << " -> " << out_path(cfg, dec_out) << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const FormatError& e) {
        std::cerr << "ristwin: " << g_stage << ": bad " << e.field() << ": " << e.what() << '\n';
        return 2;
    } catch (const StageError& e) {
        std::cerr << "ristwin: " << g_stage << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ristwin: " << g_stage << ": " << e.what() << '\n';
        return 2;
    }
    return 0;
}
