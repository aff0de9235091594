// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbmc/polymat.hpp"
#include "fbmc/signal.hpp"
#include "fbmc/tmux.hpp"

namespace fbmc {

// Composite polyphase response from source subcarrier src to destination
// subcarrier dst: 2x4 polynomial block, rows = destination real/imag branch,
// cols = source polyphase components [R0 R1 I0 I1]. Entries are real-valued
// coefficient sequences.
struct CompositeBlock {
    PolyMatrix g;  // 2x4
    int src = 0, dst = 0;
};

CompositeBlock composite_block(const TmuxConfig& cfg, const Signal& h, int src, int dst);

// The 6x12 banded channel matrix around subcarrier k: three destination pairs
// (k-1, k, k+1) by three source quads, with the two corner blocks zero.
struct BandedChannelMatrix {
    PolyMatrix g;  // 6x12
    int center_subcarrier = 0;
};

BandedChannelMatrix build_banded(const TmuxConfig& cfg, const Signal& h, int k);

// The 10x20 five-subcarrier assembly (k-2 .. k+2) with zeros outside the +-1
// coupling band: the sparse, ill-conditioned baseline structure.
PolyMatrix build_conventional(const TmuxConfig& cfg, const Signal& h, int k);

// Matrix-model prediction of the analysis-bank branch outputs from polyphase
// input frames: the cross-check oracle for the waveform path. Neighbor span
// limits which source subcarriers enter each destination (negative = all).
std::vector<BranchSeq> simulate_unified(const TmuxConfig& cfg, const Signal& h,
                                        const std::vector<OqamFrame>& frames,
                                        int neighbor_span = -1);

// Polyphase split of a staggered frame: 4x1 polynomial [R0 R1 I0 I1] over
// QAM-symbol lags. Frame start must be even.
PolyMatrix frame_to_polyphase(const OqamFrame& frame);

}  // namespace fbmc
