// SPDX-License-Identifier: Apache-2.0
#include "fbmc/chanmat.hpp"

#include <cmath>
#include <stdexcept>

namespace fbmc {

CompositeBlock composite_block(const TmuxConfig& cfg, const Signal& h, int src, int dst) {
    const int m = cfg.subcarriers;
    const BranchFilters ps = branch_filters(cfg, src);
    const BranchFilters qd = branch_filters(cfg, dst);

    const Signal ph_r = convolve(ps.p_re, h);
    const Signal ph_i = convolve(ps.p_im, h);
    // t[xy]: source branch x through the channel into destination branch y.
    const Signal t_rr = convolve(ph_r, qd.q_re);
    const Signal t_ri = convolve(ph_r, qd.q_im);
    const Signal t_ir = convolve(ph_i, qd.q_re);
    const Signal t_ii = convolve(ph_i, qd.q_im);

    long n_lo = t_rr.start, n_hi = t_rr.end();
    for (const Signal* t : {&t_ri, &t_ir, &t_ii}) {
        n_lo = std::min(n_lo, t->start);
        n_hi = std::max(n_hi, t->end());
    }
    const long l_lo = static_cast<long>(std::floor(static_cast<double>(n_lo) / m)) - 1;
    const long l_hi = static_cast<long>(std::ceil(static_cast<double>(n_hi) / m)) + 1;

    CompositeBlock blk;
    blk.src = src;
    blk.dst = dst;
    blk.g = PolyMatrix(2, 4, l_lo, l_hi);
    for (long l = l_lo; l <= l_hi; ++l) {
        const long n0 = l * m;
        const long n1 = l * m - m / 2;
        // Row 0: destination real branch (Re extraction), row 1: imaginary
        // branch (Im extraction); columns [R0 R1 I0 I1] per source phase.
        blk.g.at(l, 0, 0) = t_rr.at(n0).real();
        blk.g.at(l, 0, 1) = t_rr.at(n1).real();
        blk.g.at(l, 0, 2) = t_ir.at(n0).real();
        blk.g.at(l, 0, 3) = t_ir.at(n1).real();
        blk.g.at(l, 1, 0) = t_ri.at(n0).imag();
        blk.g.at(l, 1, 1) = t_ri.at(n1).imag();
        blk.g.at(l, 1, 2) = t_ii.at(n0).imag();
        blk.g.at(l, 1, 3) = t_ii.at(n1).imag();
    }
    blk.g.canonicalize();
    return blk;
}

namespace {

// Assemble a (2s+1)-subcarrier block matrix around k, keeping only blocks
// with |src_offset - dst_offset| <= 1.
PolyMatrix assemble_band(const TmuxConfig& cfg, const Signal& h, int k, int span) {
    const int m = cfg.subcarriers;
    const int nblk = 2 * span + 1;
    PolyMatrix out(2 * nblk, 4 * nblk);
    for (int rb = 0; rb < nblk; ++rb) {
        const int dst = (((k - span + rb) % m) + m) % m;
        for (int cb = 0; cb < nblk; ++cb) {
            if (std::abs(rb - cb) > 1) continue;
            const int src = (((k - span + cb) % m) + m) % m;
            const CompositeBlock blk = composite_block(cfg, h, src, dst);
            for (long t = blk.g.lag_min(); t <= blk.g.lag_max() && !blk.g.is_zero(); ++t) {
                out.ensure_lag(t);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 4; ++c)
                        out.at(t, 2 * rb + r, 4 * cb + c) = blk.g.get(t, r, c);
            }
        }
    }
    out.canonicalize();
    return out;
}

}  // namespace

BandedChannelMatrix build_banded(const TmuxConfig& cfg, const Signal& h, int k) {
    BandedChannelMatrix out;
    out.center_subcarrier = k;
    out.g = assemble_band(cfg, h, k, 1);
    return out;
}

PolyMatrix build_conventional(const TmuxConfig& cfg, const Signal& h, int k) {
    return assemble_band(cfg, h, k, 2);
}

PolyMatrix frame_to_polyphase(const OqamFrame& frame) {
    if (frame.start % 2 != 0)
        throw std::invalid_argument("frame_to_polyphase: frame start must be even");
    const long l0 = frame.start / 2;
    const long half_len = (static_cast<long>(frame.re.size()) + 1) / 2;
    if (half_len == 0) return PolyMatrix(4, 1);
    PolyMatrix s(4, 1, l0, l0 + half_len - 1);
    for (long i = 0; i < static_cast<long>(frame.re.size()); ++i) {
        const long l = l0 + i / 2;
        const int phase = static_cast<int>(i % 2);
        s.at(l, phase, 0) = frame.re[i];
        s.at(l, 2 + phase, 0) = frame.im[i];
    }
    s.canonicalize();
    return s;
}

std::vector<BranchSeq> simulate_unified(const TmuxConfig& cfg, const Signal& h,
                                        const std::vector<OqamFrame>& frames,
                                        int neighbor_span) {
    const int m = cfg.subcarriers;
    if (static_cast<int>(frames.size()) != m)
        throw std::invalid_argument("simulate_unified: expected one frame per subcarrier");
    std::vector<PolyMatrix> polyphase(m);
    for (int i = 0; i < m; ++i) polyphase[i] = frame_to_polyphase(frames[i]);

    std::vector<BranchSeq> out(m);
    for (int k = 0; k < m; ++k) {
        PolyMatrix acc(2, 1);
        for (int i = 0; i < m; ++i) {
            if (neighbor_span >= 0) {
                const int diff = std::abs(((i - k) % m + m) % m);
                if (std::min(diff, m - diff) > neighbor_span) continue;
            }
            if (polyphase[i].is_zero()) continue;
            const CompositeBlock blk = composite_block(cfg, h, i, k);
            acc = pm_add(acc, pm_mul(blk.g, polyphase[i]));
        }
        BranchSeq& b = out[k];
        if (acc.is_zero()) continue;
        b.re.start = b.im.start = acc.lag_min();
        b.re.v.resize(acc.num_lags());
        b.im.v.resize(acc.num_lags());
        for (long t = acc.lag_min(); t <= acc.lag_max(); ++t) {
            b.re.v[t - acc.lag_min()] = acc.get(t, 0, 0).real();
            b.im.v[t - acc.lag_min()] = acc.get(t, 1, 0).real();
        }
    }
    return out;
}

}  // namespace fbmc
