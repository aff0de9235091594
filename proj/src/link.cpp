// SPDX-License-Identifier: Apache-2.0
#include "fbmc/link.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fbmc/channel.hpp"
#include "fbmc/rng.hpp"

namespace fbmc {

namespace {

constexpr std::uint64_t kBitsTag = 0xB175;
constexpr std::uint64_t kNoiseTag = 0xA36E;

bool is_pow2(long x) { return x > 0 && (x & (x - 1)) == 0; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

FiberConfig make_fiber(const LinkConfig& cfg) {
    FiberConfig f;
    f.dispersion_ps_nm_km = cfg.dispersion_ps_nm_km;
    f.lambda_nm = cfg.lambda_nm;
    f.length_km = cfg.length_km;
    f.sample_period_s = 1.0 / (cfg.baud_gbaud * 1e9);
    return f;
}

Signal make_channel_response(const LinkConfig& cfg) {
    if (cfg.length_km <= 0.0) return Signal({1.0}, 0);
    return cd_impulse_response(make_fiber(cfg));
}

PevdParams effective_pevd(const LinkConfig& cfg) {
    PevdParams p = cfg.pevd;
    if (cfg.trunc_mode != TruncationMode::mu) p.trim_threshold = 0.0;
    return p;
}

int bits_per_symbol(int order) { return order == 4 ? 2 : 4; }

}  // namespace

const char* to_string(PrecoderType t) {
    switch (t) {
        case PrecoderType::none: return "none";
        case PrecoderType::proposed: return "proposed";
        default: return "conventional";
    }
}

const char* to_string(TruncationMode m) {
    switch (m) {
        case TruncationMode::none: return "none";
        case TruncationMode::mu: return "mu";
        default: return "adaptive";
    }
}

const char* to_string(PevdAlgorithm a) {
    return a == PevdAlgorithm::SBR2 ? "sbr2" : "smd";
}

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::snr: return "snr";
        case SweepAxis::fiber_length: return "fiber_length";
        case SweepAxis::iterations: return "iterations";
        case SweepAxis::delay: return "delay";
        default: return "subcarriers";
    }
}

void validate(const LinkConfig& cfg) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("config: " + field + ": " + why);
    };
    if (!is_pow2(cfg.subcarriers) || cfg.subcarriers < 8)
        fail("subcarriers", "must be a power of two >= 8");
    if (cfg.overlap != 4) fail("overlap", "only K = 4 is supported");
    if (cfg.qam_order != 4 && cfg.qam_order != 16) fail("qam_order", "must be 4 or 16");
    if (!(cfg.baud_gbaud > 0.0)) fail("baud_gbaud", "must be positive");
    if (!(cfg.lambda_nm > 0.0)) fail("lambda_nm", "must be positive");
    if (!(cfg.dispersion_ps_nm_km > 0.0)) fail("dispersion_ps_nm_km", "must be positive");
    if (cfg.length_km < 0.0) fail("length_km", "must be nonnegative");
    if (std::isnan(cfg.snr_db)) fail("snr_db", "must be a number or +inf");
    if (cfg.pevd.max_iterations < 1) fail("pevd.iterations", "must be >= 1");
    if (cfg.pevd.trim_threshold < 0.0) fail("pevd.mu", "must be nonnegative");
    if (cfg.pevd.stop_threshold < 0.0) fail("pevd.stop_threshold", "must be nonnegative");
    if (cfg.inversion_delay < 0) fail("inversion.delay", "must be nonnegative");
    if (cfg.trunc_mode == TruncationMode::adaptive &&
        !(cfg.trunc_alpha > 0.0 && cfg.trunc_alpha <= 1.0 && cfg.trunc_beta > 0.0 &&
          cfg.trunc_beta <= 1.0))
        fail("truncation.alpha/beta", "must lie in (0, 1]");
    if (cfg.symbols_per_run < 4 * cfg.subcarriers)
        fail("symbols_per_run", "too few symbols for the subcarrier count");
}

std::vector<Precoder> design_all(const LinkConfig& cfg) {
    validate(cfg);
    const TmuxConfig tmux = make_tmux_config(cfg.subcarriers, cfg.overlap);
    const Signal h = make_channel_response(cfg);
    const PevdParams pevd = effective_pevd(cfg);
    const InversionParams inv{cfg.inversion_delay, -1.0};
    std::vector<Precoder> out;
    out.reserve(cfg.subcarriers);
    for (int k = 0; k < cfg.subcarriers; ++k) {
        Precoder p = design_precoder(build_banded(tmux, h, k), pevd, inv);
        if (cfg.trunc_mode == TruncationMode::adaptive)
            p = truncate_precoder(p, {cfg.trunc_alpha, cfg.trunc_beta});
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

std::vector<PolyMatrix> design_all_conventional(const LinkConfig& cfg, const TmuxConfig& tmux,
                                                const Signal& h) {
    const PevdParams pevd = effective_pevd(cfg);
    const InversionParams inv{cfg.inversion_delay, -1.0};
    std::vector<PolyMatrix> out;
    out.reserve(cfg.subcarriers);
    for (int k = 0; k < cfg.subcarriers; ++k) {
        PolyMatrix p = design_conventional(build_conventional(tmux, h, k), pevd, inv);
        if (cfg.trunc_mode == TruncationMode::adaptive)
            p = truncate_adaptive(p, {cfg.trunc_alpha, cfg.trunc_beta});
        out.push_back(std::move(p));
    }
    return out;
}

long support_half_width(const PolyMatrix& p) {
    const PolyMatrix t = pm_trim(p, 1e-7);
    if (t.is_zero()) return 0;
    return std::max(std::labs(t.lag_min()), std::labs(t.lag_max()));
}

}  // namespace

RunResult run_experiment(const LinkConfig& cfg, const std::vector<Precoder>* preloaded) {
    validate(cfg);
    const int m = cfg.subcarriers;
    const int bps = bits_per_symbol(cfg.qam_order);
    const long nsym = (cfg.symbols_per_run + m - 1) / m;  // per subcarrier

    const TmuxConfig tmux = make_tmux_config(m, cfg.overlap);
    const Signal h = make_channel_response(cfg);

    // Payload bits, one contiguous block per subcarrier.
    GaussianRng bit_rng(substream_seed(cfg.seed, kBitsTag));
    std::vector<int> bits(static_cast<std::size_t>(m) * nsym * bps);
    for (int& b : bits) b = static_cast<int>(bit_rng.bits() & 1u);
    std::vector<std::vector<cplx>> streams(m);
    for (int k = 0; k < m; ++k)
        streams[k] = qam_map({bits.begin() + static_cast<long>(k) * nsym * bps,
                              bits.begin() + static_cast<long>(k + 1) * nsym * bps},
                             cfg.qam_order);

    RunResult res;
    std::vector<OqamFrame> frames;
    long precoder_extra = 0;
    const auto t_design0 = std::chrono::steady_clock::now();
    if (cfg.precoder == PrecoderType::none) {
        frames.resize(m);
        for (int k = 0; k < m; ++k) frames[k] = oqam_stagger(streams[k]);
    } else if (cfg.precoder == PrecoderType::proposed) {
        std::vector<Precoder> designed;
        const std::vector<Precoder>* pre = preloaded;
        if (!pre) {
            designed = design_all(cfg);
            pre = &designed;
        }
        if (static_cast<int>(pre->size()) != m)
            throw std::invalid_argument("run_experiment: precoder count does not match subcarriers");
        res.design_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_design0).count();
        for (const Precoder& p : *pre) {
            res.precoder_taps += pm_nnz(p.p);
            precoder_extra = std::max(precoder_extra, support_half_width(p.p));
        }
        frames = precode_stream(*pre, streams);
    } else {
        const std::vector<PolyMatrix> conv = design_all_conventional(cfg, tmux, h);
        res.design_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_design0).count();
        for (const PolyMatrix& p : conv) {
            res.precoder_taps += pm_nnz(p);
            precoder_extra = std::max(precoder_extra, support_half_width(p));
        }
        frames = precode_stream_conventional(conv, streams);
    }

    const Signal x = sfb_modulate(tmux, frames);
    const Signal y = apply_channel(x, h);
    const Signal z = add_awgn(y, cfg.snr_db, substream_seed(cfg.seed, kNoiseTag));
    const std::vector<BranchSeq> branches = afb_demodulate(tmux, z);

    const long imag_offset = cfg.precoder == PrecoderType::none ? 1 : 0;
    const long strip = cfg.overlap + 2 + precoder_extra;
    const long count = nsym - 2 * strip;
    if (count < 8)
        throw std::invalid_argument(
            "run_experiment: symbols_per_run too small for the filter supports");

    std::vector<std::vector<cplx>> rx(m), ref(m);
    std::vector<cplx> rx_all, ref_all;
    for (int k = 0; k < m; ++k) {
        rx[k] = recover_qam(branches[k], strip, count, imag_offset);
        ref[k].assign(streams[k].begin() + strip, streams[k].begin() + strip + count);
        rx_all.insert(rx_all.end(), rx[k].begin(), rx[k].end());
        ref_all.insert(ref_all.end(), ref[k].begin(), ref[k].end());
    }
    const cplx eq = scalar_equalize(rx_all, ref_all);
    for (cplx& v : rx_all) v *= eq;

    res.metrics.evm_percent = evm(rx_all, ref_all);
    res.metrics.symbol_count = static_cast<long>(rx_all.size());
    res.metrics.per_subcarrier_evm.resize(m);
    std::vector<int> rx_bits, tx_bits;
    for (int k = 0; k < m; ++k) {
        for (cplx& v : rx[k]) v *= eq;
        res.metrics.per_subcarrier_evm[k] = evm(rx[k], ref[k]);
        const std::vector<int> rb = qam_demap(rx[k], cfg.qam_order);
        rx_bits.insert(rx_bits.end(), rb.begin(), rb.end());
        tx_bits.insert(tx_bits.end(),
                       bits.begin() + (static_cast<long>(k) * nsym + strip) * bps,
                       bits.begin() + (static_cast<long>(k) * nsym + strip + count) * bps);
    }
    res.metrics.ber = ber(rx_bits, tx_bits);
    res.metrics.bit_count = static_cast<long>(rx_bits.size());
    return res;
}

namespace {

const char* kColumns =
    "m,overlap,qam_order,baud_gbaud,lambda_nm,dispersion_ps_nm_km,length_km,snr_db,"
    "pevd_algorithm,pevd_iterations,pevd_mu,inversion_delay,trunc_mode,trunc_alpha,"
    "trunc_beta,precoder,symbols_per_run,seed,evm_percent,ber,bit_count,symbol_count,"
    "design_seconds,precoder_taps";

std::string config_echo(const LinkConfig& c) {
    std::ostringstream os;
    os << "# m=" << c.subcarriers << " overlap=" << c.overlap << " qam_order=" << c.qam_order
       << " baud_gbaud=" << fmt(c.baud_gbaud) << " lambda_nm=" << fmt(c.lambda_nm)
       << " dispersion_ps_nm_km=" << fmt(c.dispersion_ps_nm_km)
       << " length_km=" << fmt(c.length_km) << " snr_db=" << fmt(c.snr_db)
       << " pevd_algorithm=" << to_string(c.pevd.algorithm)
       << " pevd_iterations=" << c.pevd.max_iterations
       << " pevd_mu=" << fmt(c.pevd.trim_threshold) << " inversion_delay=" << c.inversion_delay
       << " trunc_mode=" << to_string(c.trunc_mode) << " trunc_alpha=" << fmt(c.trunc_alpha)
       << " trunc_beta=" << fmt(c.trunc_beta) << " precoder=" << to_string(c.precoder)
       << " symbols_per_run=" << c.symbols_per_run << " seed=" << c.seed << "\n";
    return os.str();
}

std::string csv_row(const LinkConfig& c, const RunResult& r) {
    std::ostringstream os;
    os << c.subcarriers << ',' << c.overlap << ',' << c.qam_order << ',' << fmt(c.baud_gbaud)
       << ',' << fmt(c.lambda_nm) << ',' << fmt(c.dispersion_ps_nm_km) << ','
       << fmt(c.length_km) << ',' << fmt(c.snr_db) << ',' << to_string(c.pevd.algorithm) << ','
       << c.pevd.max_iterations << ',' << fmt(c.pevd.trim_threshold) << ','
       << c.inversion_delay << ',' << to_string(c.trunc_mode) << ',' << fmt(c.trunc_alpha)
       << ',' << fmt(c.trunc_beta) << ',' << to_string(c.precoder) << ','
       << c.symbols_per_run << ',' << c.seed << ',' << fmt(r.metrics.evm_percent) << ','
       << fmt(r.metrics.ber) << ',' << r.metrics.bit_count << ',' << r.metrics.symbol_count
       << ',' << fmt(r.design_seconds) << ',' << r.precoder_taps << "\n";
    return os.str();
}

LinkConfig with_axis(LinkConfig cfg, SweepAxis axis, double v) {
    switch (axis) {
        case SweepAxis::snr: cfg.snr_db = v; break;
        case SweepAxis::fiber_length: cfg.length_km = v; break;
        case SweepAxis::iterations: cfg.pevd.max_iterations = static_cast<int>(v); break;
        case SweepAxis::delay: cfg.inversion_delay = static_cast<int>(v); break;
        case SweepAxis::subcarriers: cfg.subcarriers = static_cast<int>(v); break;
    }
    return cfg;
}

}  // namespace

std::string format_run_csv(const LinkConfig& cfg, const RunResult& result) {
    return config_echo(cfg) + kColumns + "\n" + csv_row(cfg, result);
}

std::string run_csv(const LinkConfig& cfg) {
    return format_run_csv(cfg, run_experiment(cfg));
}

std::string sweep(const LinkConfig& cfg, SweepAxis axis, const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep: empty value list");
    std::ostringstream os;
    os << "# sweep axis=" << to_string(axis) << "\n" << config_echo(cfg) << kColumns << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        LinkConfig cell = with_axis(cfg, axis, values[i]);
        cell.seed = substream_seed(cfg.seed, i + 1);
        os << csv_row(cell, run_experiment(cell));
    }
    return os.str();
}

double median_design_seconds(const LinkConfig& cfg, PrecoderType type, int reps) {
    validate(cfg);
    const TmuxConfig tmux = make_tmux_config(cfg.subcarriers, cfg.overlap);
    const Signal h = make_channel_response(cfg);
    const PevdParams pevd = effective_pevd(cfg);
    const InversionParams inv{cfg.inversion_delay, -1.0};
    std::vector<double> times;
    long sink = 0;
    for (int rep = 0; rep < reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int k = 0; k < cfg.subcarriers; ++k) {
            if (type == PrecoderType::proposed)
                sink += design_precoder(build_banded(tmux, h, k), pevd, inv).p.num_lags();
            else
                sink += design_conventional(build_conventional(tmux, h, k), pevd, inv).num_lags();
        }
        times.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    if (sink < 0) return -1.0;  // keep the designs observable
    return times[times.size() / 2];
}

std::string bench_design(const LinkConfig& cfg, BenchAxis axis,
                         const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("bench_design: empty value list");
    std::ostringstream os;
    os << "# bench axis=" << (axis == BenchAxis::subcarriers ? "subcarriers" : "iterations")
       << "\n"
       << config_echo(cfg)
       << "axis,value,time_proposed_s,time_conventional_s,ratio_proposed_over_conventional\n";
    for (double v : values) {
        LinkConfig cell = cfg;
        if (axis == BenchAxis::subcarriers)
            cell.subcarriers = static_cast<int>(v);
        else
            cell.pevd.max_iterations = static_cast<int>(v);
        const double tp = median_design_seconds(cell, PrecoderType::proposed);
        const double tc = median_design_seconds(cell, PrecoderType::conventional);
        os << (axis == BenchAxis::subcarriers ? "subcarriers" : "iterations") << ',' << fmt(v)
           << ',' << fmt(tp) << ',' << fmt(tc) << ',' << fmt(tp / tc) << "\n";
    }
    return os.str();
}

std::string export_precoders(const std::vector<Precoder>& precoders) {
    std::ostringstream os;
    os << "PrecoderFile count=" << precoders.size() << "\n";
    for (const Precoder& p : precoders) {
        os << "Precoder k=" << p.subcarrier << " algorithm=" << to_string(p.provenance.algorithm)
           << " iterations=" << p.provenance.iterations << " mu=" << fmt(p.provenance.mu)
           << " delay=" << p.provenance.delay << " truncated=" << (p.truncated ? 1 : 0) << "\n"
           << pm_to_debug_text(p.p);
    }
    return os.str();
}

std::vector<Precoder> import_precoders(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("PrecoderFile count=", 0) != 0)
        throw std::invalid_argument("import_precoders: bad header");
    const long count = std::stol(line.substr(std::string("PrecoderFile count=").size()));
    std::vector<Precoder> out;
    for (long i = 0; i < count; ++i) {
        if (!std::getline(is, line) || line.rfind("Precoder ", 0) != 0)
            throw std::invalid_argument("import_precoders: missing precoder header");
        Precoder p;
        std::istringstream hs(line.substr(9));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "k") p.subcarrier = std::stoi(val);
            else if (key == "algorithm")
                p.provenance.algorithm = val == "smd" ? PevdAlgorithm::SMD : PevdAlgorithm::SBR2;
            else if (key == "iterations") p.provenance.iterations = std::stoi(val);
            else if (key == "mu") p.provenance.mu = std::stod(val);
            else if (key == "delay") p.provenance.delay = std::stoi(val);
            else if (key == "truncated") p.truncated = val != "0";
        }
        std::string pm_text;
        if (!std::getline(is, line)) throw std::invalid_argument("import_precoders: truncated");
        pm_text = line + "\n";
        // PolyMatrix header announces its lag count; read that many lines.
        const auto lags_pos = line.rfind("lags=");
        const long lags = lags_pos == std::string::npos ? 0 : std::stol(line.substr(lags_pos + 5));
        for (long t = 0; t < lags; ++t) {
            if (!std::getline(is, line)) throw std::invalid_argument("import_precoders: truncated");
            pm_text += line + "\n";
        }
        p.p = pm_from_debug_text(pm_text);
        out.push_back(std::move(p));
    }
    return out;
}

LinkConfig load_config_json(const std::string& json_text, LinkConfig base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    auto bad = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("config: " + field + ": " + why);
    };
    auto snr_from = [&](const nlohmann::json& v) -> double {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
            bad("snr_db", "unrecognized string value '" + s + "'");
        }
        return v.get<double>();
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "subcarriers" || key == "m") base.subcarriers = value.get<int>();
        else if (key == "overlap") base.overlap = value.get<int>();
        else if (key == "qam_order") base.qam_order = value.get<int>();
        else if (key == "baud_gbaud") base.baud_gbaud = value.get<double>();
        else if (key == "lambda_nm") base.lambda_nm = value.get<double>();
        else if (key == "dispersion_ps_nm_km") base.dispersion_ps_nm_km = value.get<double>();
        else if (key == "length_km") base.length_km = value.get<double>();
        else if (key == "snr_db") base.snr_db = snr_from(value);
        else if (key == "symbols_per_run") base.symbols_per_run = value.get<long>();
        else if (key == "seed") base.seed = value.get<std::uint64_t>();
        else if (key == "precoder") {
            const std::string s = value.get<std::string>();
            if (s == "none") base.precoder = PrecoderType::none;
            else if (s == "proposed") base.precoder = PrecoderType::proposed;
            else if (s == "conventional") base.precoder = PrecoderType::conventional;
            else bad("precoder", "unknown value '" + s + "'");
        } else if (key == "pevd") {
            for (const auto& [pk, pv] : value.items()) {
                if (pk == "algorithm") {
                    const std::string s = pv.get<std::string>();
                    if (s == "sbr2") base.pevd.algorithm = PevdAlgorithm::SBR2;
                    else if (s == "smd") base.pevd.algorithm = PevdAlgorithm::SMD;
                    else bad("pevd.algorithm", "unknown value '" + s + "'");
                } else if (pk == "iterations") base.pevd.max_iterations = pv.get<int>();
                else if (pk == "mu") base.pevd.trim_threshold = pv.get<double>();
                else if (pk == "stop_threshold") base.pevd.stop_threshold = pv.get<double>();
                else bad("pevd." + pk, "unknown field");
            }
        } else if (key == "inversion") {
            for (const auto& [ik, iv] : value.items()) {
                if (ik == "delay") base.inversion_delay = iv.get<int>();
                else bad("inversion." + ik, "unknown field");
            }
        } else if (key == "truncation") {
            for (const auto& [tk, tv] : value.items()) {
                if (tk == "mode") {
                    const std::string s = tv.get<std::string>();
                    if (s == "none") base.trunc_mode = TruncationMode::none;
                    else if (s == "mu") base.trunc_mode = TruncationMode::mu;
                    else if (s == "adaptive") base.trunc_mode = TruncationMode::adaptive;
                    else bad("truncation.mode", "unknown value '" + s + "'");
                } else if (tk == "alpha") base.trunc_alpha = tv.get<double>();
                else if (tk == "beta") base.trunc_beta = tv.get<double>();
                else bad("truncation." + tk, "unknown field");
            }
        } else {
            bad(key, "unknown field");
        }
    }
    return base;
}

}  // namespace fbmc
