// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbmc/chanmat.hpp"
#include "fbmc/pevd.hpp"
#include "fbmc/polyinv.hpp"
#include "fbmc/polymat.hpp"
#include "fbmc/tmux.hpp"

namespace fbmc {

struct PrecoderProvenance {
    PevdAlgorithm algorithm = PevdAlgorithm::SBR2;
    int iterations = 30;
    double mu = 0.0;
    int delay = 11;
};

// Per-subcarrier 12x2 precoder: three stacked 4-row blocks addressed to
// subcarriers k-1, k, k+1.
struct Precoder {
    PolyMatrix p;  // 12x2
    int subcarrier = 0;
    PrecoderProvenance provenance{};
    bool truncated = false;
};

struct TruncationParams {
    double alpha = 0.9;
    double beta = 0.9;
};

// Right pseudo-inverse of a wide polynomial matrix via PEVD:
// G^+ = G~ (Q A^{-1} Q~) with R = G G~ = Q A Q~. Result is cols x rows.
// pevd_out, when given, receives the decomposition (convergence trace etc.).
PolyMatrix pseudo_inverse(const PolyMatrix& g, const PevdParams& pevd,
                          const InversionParams& inv, PevdResult* pevd_out = nullptr);

// P_k = G^+ Theta with Theta the two central columns of I_6.
Precoder design_precoder(const BandedChannelMatrix& g_k, const PevdParams& pevd,
                         const InversionParams& inv);

// Same pipeline on the 10x20 conventional matrix; Theta from I_10. 20x2.
PolyMatrix design_conventional(const PolyMatrix& g_conv, const PevdParams& pevd,
                               const InversionParams& inv);

// Apply per-subcarrier precoders to the QAM symbol streams (one stream per
// subcarrier; the 2x1 input is [Re s; Im s]). Subcarrier k's polyphase input
// collects the row block addressed to k from precoders k-1, k, k+1.
std::vector<OqamFrame> precode_stream(const std::vector<Precoder>& precoders,
                                      const std::vector<std::vector<cplx>>& qam_streams);

// Conventional variant: 20x2 precoders spanning k-2 .. k+2.
std::vector<OqamFrame> precode_stream_conventional(
    const std::vector<PolyMatrix>& precoders, const std::vector<std::vector<cplx>>& qam_streams);

// Adaptive optimum-energy truncation: per element, grow a window forward and
// backward from the dominant tap while the L-tap to (L+1)-tap energy ratio
// stays at or below alpha (resp. beta); taps outside the window are zeroed.
PolyMatrix truncate_adaptive(const PolyMatrix& p, const TruncationParams& params);
Precoder truncate_precoder(const Precoder& p, const TruncationParams& params);

// chi = ||I(z) - G_inv G||_F^2, with the product's dominant lag aligned to 0.
double frobenius_error(const PolyMatrix& g, const PolyMatrix& g_inv);
double frobenius_error_db(const PolyMatrix& g, const PolyMatrix& g_inv);

}  // namespace fbmc
