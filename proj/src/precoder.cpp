// SPDX-License-Identifier: Apache-2.0
#include "fbmc/precoder.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmc/kernels.hpp"

namespace fbmc {

PolyMatrix pseudo_inverse(const PolyMatrix& g, const PevdParams& pevd,
                          const InversionParams& inv, PevdResult* pevd_out) {
    const PolyMatrix gt = pm_parah(g);
    const PolyMatrix r = pm_mul(g, gt);
    PevdResult dec = pevd_decompose(r, pevd);
    const PolyMatrix a_inv = invert_diag(dec.a, inv);
    const PolyMatrix r_inv = pm_mul(dec.q, pm_mul(a_inv, pm_parah(dec.q)));
    PolyMatrix out = pm_mul(gt, r_inv);
    if (pevd_out) *pevd_out = std::move(dec);
    return out;
}

namespace {

// Columns [first, first+count) of I_n as an n x count selector.
PolyMatrix selector(int n, int first, int count) {
    PolyMatrix theta(n, count, 0, 0);
    for (int c = 0; c < count; ++c) theta.at(0, first + c, c) = 1.0;
    return theta;
}

}  // namespace

Precoder design_precoder(const BandedChannelMatrix& g_k, const PevdParams& pevd,
                         const InversionParams& inv) {
    if (g_k.g.rows() != 6 || g_k.g.cols() != 12)
        throw std::invalid_argument("design_precoder: expected a 6x12 banded matrix");
    Precoder p;
    p.subcarrier = g_k.center_subcarrier;
    p.provenance = {pevd.algorithm, pevd.max_iterations, pevd.trim_threshold, inv.delay};
    p.p = pm_mul(pseudo_inverse(g_k.g, pevd, inv), selector(6, 2, 2));
    return p;
}

PolyMatrix design_conventional(const PolyMatrix& g_conv, const PevdParams& pevd,
                               const InversionParams& inv) {
    if (g_conv.rows() != 10 || g_conv.cols() != 20)
        throw std::invalid_argument("design_conventional: expected a 10x20 matrix");
    return pm_mul(pseudo_inverse(g_conv, pevd, inv), selector(10, 4, 2));
}

namespace {

// Shared stream precoding: each precoder is a (span*2+1)*4 x 2 stack of 4-row
// blocks addressed to subcarriers i-span .. i+span.
std::vector<OqamFrame> precode_span(const std::vector<const PolyMatrix*>& p, int span,
                                    const std::vector<std::vector<cplx>>& qam) {
    const int m = static_cast<int>(p.size());
    if (static_cast<int>(qam.size()) != m)
        throw std::invalid_argument("precode_stream: one symbol stream per precoder required");
    const std::size_t len = qam.empty() ? 0 : qam[0].size();
    for (const auto& s : qam)
        if (s.size() != len) throw std::invalid_argument("precode_stream: ragged symbol streams");

    // Precoded 12x1 (or 20x1) streams per source subcarrier.
    std::vector<PolyMatrix> pbar(m);
    for (int i = 0; i < m; ++i) {
        if (p[i] == nullptr) throw std::invalid_argument("precode_stream: missing precoder");
        if (p[i]->rows() != (2 * span + 1) * 4 || p[i]->cols() != 2)
            throw std::invalid_argument("precode_stream: bad precoder dimensions");
        PolyMatrix s(2, 1, 0, std::max<long>(len, 1) - 1);
        for (std::size_t l = 0; l < len; ++l) {
            s.at(l, 0, 0) = qam[i][l].real();
            s.at(l, 1, 0) = qam[i][l].imag();
        }
        s.canonicalize();
        pbar[i] = pm_mul(*p[i], s);
    }

    long lag_lo = 0, lag_hi = 0;
    for (const PolyMatrix& pb : pbar)
        if (!pb.is_zero()) {
            lag_lo = std::min(lag_lo, pb.lag_min());
            lag_hi = std::max(lag_hi, pb.lag_max());
        }

    std::vector<OqamFrame> frames(m);
    const long n_lags = lag_hi - lag_lo + 1;
    for (int k = 0; k < m; ++k) {
        OqamFrame& f = frames[k];
        f.start = 2 * lag_lo;
        f.re.assign(2 * n_lags, 0.0);
        f.im.assign(2 * n_lags, 0.0);
        // Contribution of precoder i to subcarrier k: the 4-row block of
        // pbar_i addressed to k, i.e. block index (k - i) + span.
        for (int off = -span; off <= span; ++off) {
            const int i = ((k - off) % m + m) % m;
            const int blk = off + span;
            const PolyMatrix& pb = pbar[i];
            if (pb.is_zero()) continue;
            for (long t = pb.lag_min(); t <= pb.lag_max(); ++t) {
                const long idx = 2 * (t - lag_lo);
                f.re[idx] += pb.get(t, 4 * blk + 0, 0).real();
                f.re[idx + 1] += pb.get(t, 4 * blk + 1, 0).real();
                f.im[idx] += pb.get(t, 4 * blk + 2, 0).real();
                f.im[idx + 1] += pb.get(t, 4 * blk + 3, 0).real();
            }
        }
    }
    return frames;
}

}  // namespace

std::vector<OqamFrame> precode_stream(const std::vector<Precoder>& precoders,
                                      const std::vector<std::vector<cplx>>& qam_streams) {
    std::vector<const PolyMatrix*> p(precoders.size());
    for (std::size_t i = 0; i < precoders.size(); ++i) {
        if (precoders[i].subcarrier != static_cast<int>(i))
            throw std::invalid_argument("precode_stream: precoders must be ordered by subcarrier");
        p[i] = &precoders[i].p;
    }
    return precode_span(p, 1, qam_streams);
}

std::vector<OqamFrame> precode_stream_conventional(
    const std::vector<PolyMatrix>& precoders, const std::vector<std::vector<cplx>>& qam_streams) {
    std::vector<const PolyMatrix*> p(precoders.size());
    for (std::size_t i = 0; i < precoders.size(); ++i) p[i] = &precoders[i];
    return precode_span(p, 2, qam_streams);
}

PolyMatrix truncate_adaptive(const PolyMatrix& p, const TruncationParams& params) {
    if (!(params.alpha > 0.0 && params.alpha <= 1.0 && params.beta > 0.0 && params.beta <= 1.0))
        throw std::invalid_argument("truncate_adaptive: alpha and beta must lie in (0, 1]");
    if (p.is_zero()) throw std::invalid_argument("truncate_adaptive: empty filter");

    PolyMatrix out(p.rows(), p.cols());
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < p.cols(); ++c) {
            const LaurentPoly e = p.entry(r, c);
            if (e.is_zero()) continue;
            long n_max = e.lag_min();
            double best = 0.0;
            for (long t = e.lag_min(); t <= e.lag_max(); ++t)
                if (std::abs(e.at(t)) > best) {
                    best = std::abs(e.at(t));
                    n_max = t;
                }
            auto window_energy = [&](long lo, long hi) {
                double acc = 0.0;
                for (long t = lo; t <= hi; ++t) acc += std::norm(e.at(t));
                return acc;
            };
            long l_a = 1;
            while (n_max + l_a <= e.lag_max()) {
                const double ratio =
                    window_energy(n_max, n_max + l_a - 1) / window_energy(n_max, n_max + l_a);
                if (ratio <= params.alpha)
                    ++l_a;
                else
                    break;
            }
            long l_b = 1;
            while (n_max - l_b >= e.lag_min()) {
                const double ratio =
                    window_energy(n_max - l_b + 1, n_max) / window_energy(n_max - l_b, n_max);
                if (ratio <= params.beta)
                    ++l_b;
                else
                    break;
            }
            std::vector<cplx> kept(l_a + l_b - 1);
            for (long t = n_max - l_b + 1; t <= n_max + l_a - 1; ++t)
                kept[t - (n_max - l_b + 1)] = e.at(t);
            out.set_entry(r, c, LaurentPoly(std::move(kept), n_max - l_b + 1));
        }
    out.canonicalize();
    return out;
}

Precoder truncate_precoder(const Precoder& p, const TruncationParams& params) {
    Precoder out = p;
    out.p = truncate_adaptive(p.p, params);
    out.truncated = true;
    return out;
}

double frobenius_error(const PolyMatrix& g, const PolyMatrix& g_inv) {
    PolyMatrix prod = pm_mul(g_inv, g);
    if (prod.rows() != prod.cols())
        throw std::invalid_argument("frobenius_error: product is not square");
    const int n = prod.rows();
    if (prod.is_zero()) return static_cast<double>(n);
    // A common delay is not an error: align the dominant lag slice to 0.
    long best_lag = prod.lag_min();
    double best = -1.0;
    const std::size_t rc = static_cast<std::size_t>(n) * n;
    for (long t = prod.lag_min(); t <= prod.lag_max(); ++t) {
        const double e = kern::energy(prod.slice(t), rc);
        if (e > best) {
            best = e;
            best_lag = t;
        }
    }
    if (best_lag != 0) prod = pm_shift(prod, -best_lag);
    return std::pow(pm_fro_norm(pm_sub(PolyMatrix::identity(n), prod)), 2);
}

double frobenius_error_db(const PolyMatrix& g, const PolyMatrix& g_inv) {
    return 10.0 * std::log10(frobenius_error(g, g_inv));
}

}  // namespace fbmc
