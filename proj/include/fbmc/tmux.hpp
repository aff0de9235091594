// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbmc/signal.hpp"

namespace fbmc {

// FBMC/OQAM transmultiplexer configuration: M subcarriers, overlap factor K,
// unit-energy linear-phase PHYDYAS prototype u of length K*M.
struct TmuxConfig {
    int subcarriers = 0;       // M, power of two
    int overlap = 4;           // K
    std::vector<double> u;     // prototype taps
};

// Frequency-sampling PHYDYAS design for K = 4; symmetric, unit energy.
std::vector<double> phydyas_prototype(int subcarriers, int overlap);

TmuxConfig make_tmux_config(int subcarriers, int overlap = 4);

// Staggered real/imaginary branch sequences at twice the QAM symbol rate;
// sample index m = start + i. QAM data sits at even m before any precoding.
struct OqamFrame {
    std::vector<double> re, im;
    long start = 0;
};

OqamFrame oqam_stagger(const std::vector<cplx>& qam_symbols);
std::vector<cplx> oqam_destagger(const OqamFrame& frame);

// The four polyphase branch filters of one subcarrier. p_im(z) = j z^{-M/2}
// p_re(z) and q_im(z) = z^{-M/2} q_re(z); q_re is the matched (conjugate
// time-reversed) partner of p_re.
struct BranchFilters {
    Signal p_re, p_im, q_re, q_im;
};

BranchFilters branch_filters(const TmuxConfig& cfg, int subcarrier);

// Synthesis bank: branch samples at m enter the serial stream at n = m*M/2.
Signal sfb_modulate(const TmuxConfig& cfg, const std::vector<OqamFrame>& frames);

// Analysis bank output for one subcarrier, sampled at n = l*M on both
// branches (zero-phase polyphase components). For a plain staggered frame the
// real branch recovers symbol l at index l and the imaginary branch at index
// l + 1; the precoded path compensates that internal delay by design.
struct BranchSeq {
    RealSeq re, im;
};

std::vector<BranchSeq> afb_demodulate(const TmuxConfig& cfg, const Signal& signal);

// Deterministic recovery offsets exposed so callers strip exactly the right
// symbols: real branch offset 0, imaginary branch offset 1 (plain TMUX),
// plus K symbols of filter transient at each edge.
struct TmuxDelays {
    long real_offset = 0;
    long imag_offset = 1;
    long transient = 0;
};

TmuxDelays tmux_delays(const TmuxConfig& cfg);

// s[l] = re(l0 + l) + j * im(l0 + l + imag_offset)
std::vector<cplx> recover_qam(const BranchSeq& branch, long l0, long count, long imag_offset);

}  // namespace fbmc
