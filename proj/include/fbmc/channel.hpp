// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "fbmc/signal.hpp"

namespace fbmc {

// Fiber parameters in engineering units; converted to SI once, where the
// chromatic-dispersion tap formula is evaluated.
struct FiberConfig {
    double dispersion_ps_nm_km = 17.0;
    double lambda_nm = 1550.0;
    double length_km = 80.0;
    double sample_period_s = 1.0 / 30e9;
};

constexpr double kSpeedOfLight = 299792458.0;

// N_tap = 2*floor(|D| lambda^2 L / (2 c T^2)) + 1
long cd_tap_count(const FiberConfig& cfg);

// Truncated discrete-time CD response, constant-modulus and even in n,
// centered on lag 0 (start = -floor(N_tap/2)).
Signal cd_impulse_response(const FiberConfig& cfg);

// Linear convolution; a centered h keeps the output aligned with the input.
Signal apply_channel(const Signal& signal, const Signal& h);

// Circular complex white Gaussian noise at the given SNR relative to the mean
// sample power. snr_db = +infinity returns the signal unchanged.
Signal add_awgn(const Signal& signal, double snr_db, std::uint64_t seed);

}  // namespace fbmc
