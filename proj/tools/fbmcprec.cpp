// SPDX-License-Identifier: Apache-2.0
//
// Experiment CLI for the FBMC/OQAM precoder library.
//
//   fbmcprec design --out precoders.txt [--trace-file trace.csv]
//   fbmcprec run [--precoders precoders.txt]
//   fbmcprec sweep --axis snr --values 4,8,12
//   fbmcprec bench --axis subcarriers --values 16,32
//
// Output is CSV on stdout unless --out is given. A JSON config file supplies
// defaults; command-line flags override it.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fbmc/channel.hpp"
#include "fbmc/link.hpp"
#include "fbmc/rng.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write file: " + out_path);
    out << text;
}

struct CliOverrides {
    std::optional<int> m, qam, iterations, delay;
    std::optional<double> baud, length_km, snr_db, mu, alpha, beta;
    std::optional<std::string> algorithm, precoder, trunc_mode;
    std::optional<long> symbols;
    std::optional<std::uint64_t> seed;
};

fbmc::LinkConfig merge(const std::string& config_path, const CliOverrides& o) {
    fbmc::LinkConfig cfg;
    if (!config_path.empty()) cfg = fbmc::load_config_json(read_file(config_path));
    if (o.m) cfg.subcarriers = *o.m;
    if (o.qam) cfg.qam_order = *o.qam;
    if (o.iterations) cfg.pevd.max_iterations = *o.iterations;
    if (o.delay) cfg.inversion_delay = *o.delay;
    if (o.baud) cfg.baud_gbaud = *o.baud;
    if (o.length_km) cfg.length_km = *o.length_km;
    if (o.snr_db) cfg.snr_db = *o.snr_db;
    if (o.mu) cfg.pevd.trim_threshold = *o.mu;
    if (o.alpha) cfg.trunc_alpha = *o.alpha;
    if (o.beta) cfg.trunc_beta = *o.beta;
    if (o.symbols) cfg.symbols_per_run = *o.symbols;
    if (o.seed) cfg.seed = *o.seed;
    if (o.algorithm) {
        if (*o.algorithm == "sbr2") cfg.pevd.algorithm = fbmc::PevdAlgorithm::SBR2;
        else if (*o.algorithm == "smd") cfg.pevd.algorithm = fbmc::PevdAlgorithm::SMD;
        else throw std::invalid_argument("config: pevd.algorithm: unknown value '" + *o.algorithm + "'");
    }
    if (o.precoder) {
        if (*o.precoder == "none") cfg.precoder = fbmc::PrecoderType::none;
        else if (*o.precoder == "proposed") cfg.precoder = fbmc::PrecoderType::proposed;
        else if (*o.precoder == "conventional") cfg.precoder = fbmc::PrecoderType::conventional;
        else throw std::invalid_argument("config: precoder: unknown value '" + *o.precoder + "'");
    }
    if (o.trunc_mode) {
        if (*o.trunc_mode == "none") cfg.trunc_mode = fbmc::TruncationMode::none;
        else if (*o.trunc_mode == "mu") cfg.trunc_mode = fbmc::TruncationMode::mu;
        else if (*o.trunc_mode == "adaptive") cfg.trunc_mode = fbmc::TruncationMode::adaptive;
        else throw std::invalid_argument("config: truncation.mode: unknown value '" + *o.trunc_mode + "'");
    }
    return cfg;
}

fbmc::SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "snr") return fbmc::SweepAxis::snr;
    if (s == "fiber_length") return fbmc::SweepAxis::fiber_length;
    if (s == "iterations") return fbmc::SweepAxis::iterations;
    if (s == "delay") return fbmc::SweepAxis::delay;
    if (s == "subcarriers") return fbmc::SweepAxis::subcarriers;
    throw std::invalid_argument("sweep: unknown axis '" + s + "'");
}

// Per-subcarrier PEVD convergence dump: one CSV row per iteration.
std::string design_trace_csv(const fbmc::LinkConfig& cfg) {
    const fbmc::TmuxConfig tmux = fbmc::make_tmux_config(cfg.subcarriers, cfg.overlap);
    const fbmc::Signal h = cfg.length_km > 0.0
                               ? fbmc::cd_impulse_response({cfg.dispersion_ps_nm_km, cfg.lambda_nm,
                                                            cfg.length_km,
                                                            1.0 / (cfg.baud_gbaud * 1e9)})
                               : fbmc::Signal({1.0}, 0);
    std::ostringstream os;
    os << "subcarrier,iteration,off_diag_energy,q_order,a_order\n";
    fbmc::InversionParams inv{cfg.inversion_delay, -1.0};
    for (int k = 0; k < cfg.subcarriers; ++k) {
        fbmc::PevdResult dec;
        fbmc::pseudo_inverse(fbmc::build_banded(tmux, h, k).g, cfg.pevd, inv, &dec);
        for (std::size_t i = 0; i < dec.trace.size(); ++i) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.10g", dec.trace[i]);
            os << k << ',' << (i + 1) << ',' << buf << ',' << dec.q_order_trace[i] << ','
               << dec.a_order_trace[i] << "\n";
        }
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PEVD-based precoder experiments for coherent optical FBMC/OQAM"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    CliOverrides ov;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "write output to this path instead of stdout");
    app.add_option("--m", ov.m, "subcarrier count");
    app.add_option("--qam", ov.qam, "QAM order (4 or 16)");
    app.add_option("--baud", ov.baud, "aggregate symbol rate in Gbaud");
    app.add_option("--length-km", ov.length_km, "fiber length in km");
    app.add_option("--snr", ov.snr_db, "SNR in dB (omit for noiseless)");
    app.add_option("--algorithm", ov.algorithm, "PEVD algorithm: sbr2 | smd");
    app.add_option("--iterations", ov.iterations, "PEVD iteration count");
    app.add_option("--mu", ov.mu, "PEVD trim threshold (with --trunc mu)");
    app.add_option("--delay", ov.delay, "inversion delay d");
    app.add_option("--trunc", ov.trunc_mode, "truncation mode: none | mu | adaptive");
    app.add_option("--alpha", ov.alpha, "adaptive truncation alpha");
    app.add_option("--beta", ov.beta, "adaptive truncation beta");
    app.add_option("--precoder", ov.precoder, "precoder: none | proposed | conventional");
    app.add_option("--symbols", ov.symbols, "QAM symbols per run (total)");
    app.add_option("--seed", ov.seed, "base RNG seed");

    auto* design = app.add_subcommand("design", "design and export per-subcarrier precoders");
    std::string trace_path;
    design->add_option("--trace-file", trace_path, "write per-iteration PEVD trace CSV");

    auto* run = app.add_subcommand("run", "run a single experiment cell");
    std::string precoders_path;
    run->add_option("--precoders", precoders_path, "reuse exported precoders");

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one axis");
    std::string axis_name;
    std::vector<double> values;
    sweep_cmd->add_option("--axis", axis_name,
                          "snr | fiber_length | iterations | delay | subcarriers")
        ->required();
    sweep_cmd->add_option("--values", values, "axis values")->required()->delimiter(',');

    auto* bench = app.add_subcommand("bench", "time precoder design, proposed vs conventional");
    std::string bench_axis = "subcarriers";
    std::vector<double> bench_values;
    bench->add_option("--axis", bench_axis, "subcarriers | iterations");
    bench->add_option("--values", bench_values, "axis values")->required()->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        const fbmc::LinkConfig cfg = merge(config_path, ov);
        if (design->parsed()) {
            const auto precoders = fbmc::design_all(cfg);
            write_output(out_path, fbmc::export_precoders(precoders));
            if (!trace_path.empty()) {
                std::ofstream tf(trace_path);
                if (!tf) throw std::invalid_argument("cannot write file: " + trace_path);
                tf << design_trace_csv(cfg);
            }
        } else if (run->parsed()) {
            if (!precoders_path.empty()) {
                const auto pre = fbmc::import_precoders(read_file(precoders_path));
                write_output(out_path, fbmc::format_run_csv(cfg, fbmc::run_experiment(cfg, &pre)));
            } else {
                write_output(out_path, fbmc::run_csv(cfg));
            }
        } else if (sweep_cmd->parsed()) {
            write_output(out_path, fbmc::sweep(cfg, parse_sweep_axis(axis_name), values));
        } else if (bench->parsed()) {
            const fbmc::BenchAxis ax = bench_axis == "iterations" ? fbmc::BenchAxis::iterations
                                                                  : fbmc::BenchAxis::subcarriers;
            write_output(out_path, fbmc::bench_design(cfg, ax, bench_values));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
