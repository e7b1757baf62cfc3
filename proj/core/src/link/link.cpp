// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/link.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <sstream>
#include <utility>

#include "ristwin/errors.hpp"
#include "ristwin/link/estimation.hpp"
#include "ristwin/link/interleaver.hpp"
#include "ristwin/link/sync.hpp"
#include "ristwin/units.hpp"

namespace ris::link {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

struct FrameOutcome {
    std::size_t raw_errors = 0;
    std::size_t raw_bits = 0;
    std::size_t coded_errors = 0;
    double error_energy = 0.0;
    double reference_energy = 0.0;
    ChannelOutput channel;
    SyncResult sync;
};

FrameOutcome run_frame(const LinkConfig& cfg, std::span<const std::uint8_t> info, std::uint64_t seed,
                       const SurfaceLayout* layout, const Codeword* codeword) {
    const OfdmNumerology& num = cfg.numerology;
    const std::size_t block = static_cast<std::size_t>(cfg.interleaver_rows) * static_cast<std::size_t>(cfg.interleaver_cols);

    // Transmitter.
    Bits coded = stage("encode", [&] { return encode(info, cfg.coder); });
    const std::size_t coded_len = coded.size();
    const std::size_t padded_len = (coded_len + block - 1) / block * block;
    for (std::size_t i = coded.size(); i < padded_len; ++i) coded.push_back(static_cast<std::uint8_t>(splitmix(i) & 1u));
    const Bits channel_bits = stage("interleave", [&] {
        return interleave_blocks<std::uint8_t>(coded, cfg.interleaver_rows, cfg.interleaver_cols);
    });
    const Frame frame = stage("frame", [&] { return build_frame(channel_bits, cfg.frame_format()); });

    FrameOutcome out;
    ChannelConfig ch = cfg.channel;
    ch.seed = seed;
    out.channel = stage("channel", [&] { return apply_channel(frame.samples, ch, num, layout, codeword); });

    // Receiver.
    std::vector<cplx>& rx = out.channel.samples;
    out.sync = stage("sync", [&] { return synchronize(rx, num); });
    correct_cfo(rx, num, out.sync.cfo_subcarriers);

    const int backoff = num.cp_length / 4;
    const OfdmSymbolGrid grid = stage("demodulate", [&] {
        return ofdm_demodulate(rx, num, frame.data_symbols(), out.sync.timing + static_cast<std::size_t>(num.symbol_length()),
                               backoff);
    });
    const std::vector<cplx> h = stage("estimate", [&] { return estimate_channel(grid, num); });
    const OfdmSymbolGrid eq = equalize(grid, num, h, true);

    // Residual at pilots gives the post-equalization noise variance.
    double pilot_err = 0.0;
    std::size_t pilot_count = 0;
    for (int s = 0; s < eq.symbols; ++s) {
        for (int u = 0; u < num.used_subcarriers; ++u) {
            if (!num.is_pilot(u)) continue;
            pilot_err += std::norm(eq.at(s, num.grid_column(num.logical_index(u))) - pilot_value(s, u));
            ++pilot_count;
        }
    }
    double noise_var = pilot_count > 0 ? pilot_err / static_cast<double>(pilot_count) : 0.0;
    if (eq.symbols > 1) noise_var *= static_cast<double>(eq.symbols) / static_cast<double>(eq.symbols - 1);
    noise_var = std::max(noise_var, 1e-9);

    const std::vector<cplx> rx_cells = extract_data_cells(eq);
    const std::vector<cplx> tx_cells = extract_data_cells(frame.data);
    for (std::size_t i = 0; i < rx_cells.size(); ++i) {
        out.error_energy += std::norm(rx_cells[i] - tx_cells[i]);
        out.reference_energy += std::norm(tx_cells[i]);
    }

    const std::size_t carried = channel_bits.size();
    const std::vector<std::uint8_t> hard = demap_symbols(rx_cells, cfg.modulation);
    for (std::size_t i = 0; i < carried; ++i) out.raw_errors += hard[i] != channel_bits[i];
    out.raw_bits = carried;

    Bits decoded;
    if (cfg.decoder_input == DecoderInput::Soft) {
        const double nv[1] = {noise_var};
        std::vector<float> llr = demap_soft(rx_cells, cfg.modulation, nv);
        llr.resize(carried);
        std::vector<float> deint = interleave_blocks<float>(llr, cfg.interleaver_rows, cfg.interleaver_cols, true);
        deint.resize(coded_len);
        decoded = stage("decode", [&] { return viterbi_decode(deint, cfg.coder); });
    } else {
        std::vector<std::uint8_t> bits(hard.begin(), hard.begin() + static_cast<std::ptrdiff_t>(carried));
        std::vector<std::uint8_t> deint = interleave_blocks<std::uint8_t>(bits, cfg.interleaver_rows, cfg.interleaver_cols, true);
        deint.resize(coded_len);
        decoded = stage("decode", [&] { return viterbi_decode_hard(deint, cfg.coder); });
    }
    for (std::size_t i = 0; i < info.size(); ++i) out.coded_errors += decoded[i] != info[i];
    return out;
}

}  // namespace

std::string to_string(DecoderInput d) { return d == DecoderInput::Soft ? "soft" : "hard"; }

DecoderInput parse_decoder_input(const std::string& text) {
    if (text == "soft") return DecoderInput::Soft;
    if (text == "hard") return DecoderInput::Hard;
    throw ConfigError("unknown decoder input '" + text + "' (expected soft or hard)");
}

void LinkConfig::validate() const {
    numerology.validate();
    coder.validate();
    channel.validate();
    if (interleaver_rows < 1 || interleaver_cols < 1) throw ConfigError("link: interleaver dimensions must be positive");
    if (data_symbols_per_frame < 1) throw ConfigError("link: at least one data symbol per frame is required");
    const std::size_t block = static_cast<std::size_t>(interleaver_rows) * static_cast<std::size_t>(interleaver_cols);
    if (frame_format().capacity_bits() < block) {
        throw ConfigError("link: interleaver block of " + std::to_string(block) + " bits exceeds the frame capacity of " +
                          std::to_string(frame_format().capacity_bits()) + " bits");
    }
    if (info_bits_per_frame() == 0) throw ConfigError("link: frame carries no information bits after the code tail");
}

std::size_t LinkConfig::info_bits_per_frame() const {
    const std::size_t block = static_cast<std::size_t>(interleaver_rows) * static_cast<std::size_t>(interleaver_cols);
    const std::size_t usable = frame_format().capacity_bits() / block * block;
    if (coder.kind == CoderSpec::Kind::None) return usable;
    const std::size_t n = static_cast<std::size_t>(coder.outputs);
    const std::size_t tail = static_cast<std::size_t>(coder.constraint_length - 1);
    return usable / n > tail ? usable / n - tail : 0;
}

double LinkConfig::data_rate_bps() const {
    const double used = numerology.used_subcarriers;
    const double data_fraction = numerology.data_cells_per_symbol() / used;
    return used * data_fraction * bits_per_symbol(modulation) * coder.rate() / numerology.symbol_duration_s();
}

std::vector<std::uint8_t> random_payload(std::size_t bits, std::uint64_t seed) {
    std::vector<std::uint8_t> out(bits);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < bits; ++i) {
        if (i % 64 == 0) word = splitmix(seed ^ (i / 64 * 0xD1B54A32D192ED03ull));
        out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return out;
}

LinkReport run_link(const LinkConfig& config, std::span<const std::uint8_t> payload, const SurfaceLayout* layout,
                    const Codeword* codeword) {
    stage("config", [&] { config.validate(); });
    if (payload.empty()) throw StageError("config", "empty payload");

    // The surface gain is fixed for the run; resolve it once.
    LinkConfig cfg = config;
    if (!cfg.channel.ris_gain_dbi) {
        cfg.channel.ris_gain_dbi = stage("channel", [&] {
            const SurfaceLayout default_layout{};
            const SurfaceLayout& lay = layout ? *layout : default_layout;
            if (codeword) return ris_gain_toward(lay, *codeword, cfg.channel.rx_theta_deg, cfg.channel.rx_phi_deg);
            return ris_gain_toward(lay, broadside_codeword(lay), cfg.channel.rx_theta_deg, cfg.channel.rx_phi_deg);
        });
    }

    const std::size_t per_frame = cfg.info_bits_per_frame();
    LinkReport rep;
    rep.rate_bps = config.data_rate_bps();
    double err_e = 0.0;
    double ref_e = 0.0;
    for (std::size_t off = 0; off < payload.size(); off += per_frame) {
        const auto chunk = payload.subspan(off, std::min(per_frame, payload.size() - off));
        const std::uint64_t seed = splitmix(config.channel.seed + 0x632BE59BD9B4E019ull * rep.frames);
        const FrameOutcome f = run_frame(cfg, chunk, seed, layout, codeword);
        rep.raw_errors += f.raw_errors;
        rep.raw_bits += f.raw_bits;
        rep.coded_errors += f.coded_errors;
        err_e += f.error_energy;
        ref_e += f.reference_energy;
        rep.received_power_dbm = f.channel.received_power_dbm;
        rep.snr_db = f.channel.snr_db;
        rep.ris_gain_dbi = f.channel.ris_gain_dbi;
        rep.cfo_estimate = f.sync.cfo_subcarriers;
        rep.timing_error = static_cast<long>(f.sync.timing) - static_cast<long>(config.channel.timing_offset);
        ++rep.frames;
    }
    rep.info_bits = payload.size();
    rep.raw_ber = rep.raw_bits ? static_cast<double>(rep.raw_errors) / static_cast<double>(rep.raw_bits) : 0.0;
    rep.coded_ber = static_cast<double>(rep.coded_errors) / static_cast<double>(rep.info_bits);
    rep.evm_db = err_e > 0.0 ? power_to_db(err_e / ref_e) : -std::numeric_limits<double>::infinity();
    return rep;
}

std::string report_to_text(const LinkReport& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "raw_ber = " << r.raw_ber << '\n'
       << "coded_ber = " << r.coded_ber << '\n'
       << "evm_db = " << r.evm_db << '\n'
       << "rate_bps = " << r.rate_bps << '\n'
       << "received_power_dbm = " << r.received_power_dbm << '\n'
       << "snr_db = " << r.snr_db << '\n'
       << "ris_gain_dbi = " << r.ris_gain_dbi << '\n'
       << "frames = " << r.frames << '\n'
       << "info_bits = " << r.info_bits << '\n'
       << "raw_bits = " << r.raw_bits << '\n'
       << "raw_errors = " << r.raw_errors << '\n'
       << "coded_errors = " << r.coded_errors << '\n'
       << "cfo_estimate = " << r.cfo_estimate << '\n'
       << "timing_error = " << r.timing_error << '\n';
    return os.str();
}

std::vector<SnrPoint> snr_sweep(const LinkConfig& config, std::span<const double> snr_db,
                                std::span<const std::uint8_t> payload, const SurfaceLayout* layout,
                                const Codeword* codeword) {
    std::vector<std::future<LinkReport>> jobs;
    jobs.reserve(snr_db.size());
    for (double snr : snr_db) {
        LinkConfig c = config;
        c.channel.noise = NoiseMode::Snr;
        c.channel.snr_db = snr;
        jobs.push_back(std::async(std::launch::async, [c, payload, layout, codeword] {
            return run_link(c, payload, layout, codeword);
        }));
    }
    std::vector<SnrPoint> out;
    out.reserve(snr_db.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) out.push_back({snr_db[i], jobs[i].get()});
    return out;
}

std::string sweep_to_csv(const std::vector<SnrPoint>& points) {
    std::ostringstream os;
    os << std::setprecision(10) << "snr_db,raw_ber,coded_ber,evm_db\n";
    for (const SnrPoint& p : points) {
        os << p.snr_db << ',' << p.report.raw_ber << ',' << p.report.coded_ber << ',' << p.report.evm_db << '\n';
    }
    return os.str();
}

double awgn_ber(Modulation m, double es_n0_db) {
    const double M = std::pow(2.0, bits_per_symbol(m));
    const double es_n0 = db_to_power(es_n0_db);
    const double k = bits_per_symbol(m);
    return 4.0 / k * (1.0 - 1.0 / std::sqrt(M)) * q_function(std::sqrt(3.0 * es_n0 / (M - 1.0)));
}

}  // namespace ris::link
