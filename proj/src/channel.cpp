// SPDX-License-Identifier: Apache-2.0
#include "fbmc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmc/kernels.hpp"
#include "fbmc/rng.hpp"
#include "fbmc/tmux.hpp"

namespace fbmc {

namespace {
struct FiberSi {
    double d, lambda, l, t;
};

FiberSi to_si(const FiberConfig& cfg) {
    return {cfg.dispersion_ps_nm_km * 1e-6, cfg.lambda_nm * 1e-9, cfg.length_km * 1e3,
            cfg.sample_period_s};
}
}  // namespace

long cd_tap_count(const FiberConfig& cfg) {
    const FiberSi s = to_si(cfg);
    if (s.l <= 0.0 || s.t <= 0.0) throw std::invalid_argument("cd_tap_count: L and T must be positive");
    const double span = std::abs(s.d) * s.lambda * s.lambda * s.l / (2.0 * kSpeedOfLight * s.t * s.t);
    return 2 * static_cast<long>(std::floor(span)) + 1;
}

Signal cd_impulse_response(const FiberConfig& cfg) {
    const FiberSi s = to_si(cfg);
    if (s.l <= 0.0)
        throw std::invalid_argument("cd_impulse_response: degenerate fiber length (use h = delta)");
    const long n_tap = cd_tap_count(cfg);
    const long half = n_tap / 2;
    // h[n] = sqrt(j xi) exp(-j pi xi n^2), xi = c T^2 / (D lambda^2 L)
    const double xi = kSpeedOfLight * s.t * s.t / (s.d * s.lambda * s.lambda * s.l);
    const cplx amp = std::sqrt(cplx(0.0, xi));
    Signal h(std::vector<cplx>(n_tap), -half);
    for (long n = -half; n <= half; ++n)
        h.data[n + half] = amp * std::polar(1.0, -M_PI * xi * static_cast<double>(n) *
                                                     static_cast<double>(n));
    return h;
}

Signal apply_channel(const Signal& signal, const Signal& h) {
    return convolve(signal, h);
}

Signal add_awgn(const Signal& signal, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0.0) return signal;
    const double power = signal_energy(signal) / std::max<long>(signal.size(), 1);
    if (power <= 0.0) throw std::invalid_argument("add_awgn: zero-power signal");
    const double sigma2 = power * std::pow(10.0, -snr_db / 10.0);
    const double scale = std::sqrt(sigma2 / 2.0);
    GaussianRng rng(seed);
    Signal out = signal;
    for (cplx& x : out.data) {
        const auto [g1, g2] = rng.normal_pair();
        x += cplx(scale * g1, scale * g2);
    }
    return out;
}

}  // namespace fbmc
