// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fbmc/metrics.hpp"
#include "fbmc/pevd.hpp"
#include "fbmc/precoder.hpp"

namespace fbmc {

enum class PrecoderType { none, proposed, conventional };
enum class TruncationMode { none, mu, adaptive };

// Full experiment cell parameterization. Engineering units; symbols_per_run
// counts QAM symbols totalled over all subcarriers.
struct LinkConfig {
    int subcarriers = 16;
    int overlap = 4;
    int qam_order = 4;
    double baud_gbaud = 30.0;
    double lambda_nm = 1550.0;
    double dispersion_ps_nm_km = 17.0;
    double length_km = 80.0;
    double snr_db = std::numeric_limits<double>::infinity();
    PevdParams pevd{};
    int inversion_delay = 11;
    TruncationMode trunc_mode = TruncationMode::none;
    double trunc_alpha = 0.9;
    double trunc_beta = 0.9;
    PrecoderType precoder = PrecoderType::proposed;
    long symbols_per_run = 20000;
    std::uint64_t seed = 1;
};

// Throws std::invalid_argument with a field-level message.
void validate(const LinkConfig& cfg);

struct RunResult {
    MetricsReport metrics;
    double design_seconds = 0.0;  // wall clock spent designing precoders
    long precoder_taps = 0;       // retained coefficients over all subcarriers
};

// Full pipeline: map -> stagger/precode -> SFB -> channel -> AWGN -> AFB ->
// recover -> demap -> metrics. Deterministic for a given (config, seed).
// Preloaded proposed precoders skip the design step when supplied.
RunResult run_experiment(const LinkConfig& cfg,
                         const std::vector<Precoder>* preloaded = nullptr);

enum class SweepAxis { snr, fiber_length, iterations, delay, subcarriers };
enum class BenchAxis { subcarriers, iterations };

// CSV with a config-echo comment header, one row per cell / value.
std::string run_csv(const LinkConfig& cfg);
std::string format_run_csv(const LinkConfig& cfg, const RunResult& result);
std::string sweep(const LinkConfig& cfg, SweepAxis axis, const std::vector<double>& values);
std::string bench_design(const LinkConfig& cfg, BenchAxis axis,
                         const std::vector<double>& values);

// Median over reps of the wall clock for designing all M precoders.
double median_design_seconds(const LinkConfig& cfg, PrecoderType type, int reps = 3);

// All proposed per-subcarrier precoders for the config's channel.
std::vector<Precoder> design_all(const LinkConfig& cfg);

// Structured text export of designed precoders for reuse across runs.
std::string export_precoders(const std::vector<Precoder>& precoders);
std::vector<Precoder> import_precoders(const std::string& text);

// JSON config file; fields present override `base`. Unknown keys are errors.
LinkConfig load_config_json(const std::string& json_text, LinkConfig base = {});

const char* to_string(PrecoderType t);
const char* to_string(TruncationMode m);
const char* to_string(PevdAlgorithm a);
const char* to_string(SweepAxis a);

}  // namespace fbmc
