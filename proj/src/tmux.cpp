// SPDX-License-Identifier: Apache-2.0
#include "fbmc/tmux.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmc/kernels.hpp"

namespace fbmc {

Signal convolve(const Signal& a, const Signal& b) {
    if (a.data.empty() || b.data.empty()) return Signal();
    Signal out(std::vector<cplx>(a.data.size() + b.data.size() - 1, 0.0), a.start + b.start);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        if (a.data[i] == cplx(0.0)) continue;
        kern::cmac(out.data.data() + i, b.data.data(), a.data[i], b.data.size());
    }
    return out;
}

double signal_energy(const Signal& a) { return kern::energy(a.data.data(), a.data.size()); }

namespace {
bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }
}  // namespace

std::vector<double> phydyas_prototype(int subcarriers, int overlap) {
    if (overlap != 4) throw std::invalid_argument("phydyas_prototype: only K = 4 supported");
    if (subcarriers < 2 || !is_pow2(subcarriers))
        throw std::invalid_argument("phydyas_prototype: M must be a power of two >= 2");
    const int len = overlap * subcarriers;
    // Frequency-sampling coefficients for K = 4 (H1^2 + H3^2 = 1, H2 = sqrt(1/2)).
    const double h1 = 0.971960, h2 = std::sqrt(0.5), h3 = 0.235147;
    std::vector<double> u(len);
    for (int n = 0; n < len / 2; ++n) {
        const double x = 2.0 * M_PI * (n + 0.5) / len;
        u[n] = 1.0 - 2.0 * h1 * std::cos(x) + 2.0 * h2 * std::cos(2.0 * x) -
               2.0 * h3 * std::cos(3.0 * x);
        u[len - 1 - n] = u[n];
    }
    double e = 0.0;
    for (double t : u) e += t * t;
    const double s = 1.0 / std::sqrt(e);
    for (double& t : u) t *= s;
    return u;
}

TmuxConfig make_tmux_config(int subcarriers, int overlap) {
    TmuxConfig cfg;
    cfg.subcarriers = subcarriers;
    cfg.overlap = overlap;
    cfg.u = phydyas_prototype(subcarriers, overlap);
    return cfg;
}

OqamFrame oqam_stagger(const std::vector<cplx>& qam_symbols) {
    OqamFrame f;
    f.re.assign(2 * qam_symbols.size(), 0.0);
    f.im.assign(2 * qam_symbols.size(), 0.0);
    for (std::size_t l = 0; l < qam_symbols.size(); ++l) {
        f.re[2 * l] = qam_symbols[l].real();
        f.im[2 * l] = qam_symbols[l].imag();
    }
    return f;
}

std::vector<cplx> oqam_destagger(const OqamFrame& frame) {
    std::vector<cplx> out(frame.re.size() / 2);
    for (std::size_t l = 0; l < out.size(); ++l)
        out[l] = cplx(frame.re[2 * l], frame.im[2 * l]);
    return out;
}

BranchFilters branch_filters(const TmuxConfig& cfg, int subcarrier) {
    const int m = cfg.subcarriers;
    if (subcarrier < -m / 2 || subcarrier >= m)
        throw std::invalid_argument("branch_filters: subcarrier index out of range");
    const int i = ((subcarrier % m) + m) % m;
    const int len = cfg.overlap * m;
    // Modulation phase referenced to the prototype center keeps adjacent
    // subcarriers orthogonal in the real field.
    const double center = 0.5 * (len - 1);
    const cplx ji = std::polar(1.0, 0.5 * M_PI * (i % 4));

    BranchFilters bf;
    bf.p_re.data.resize(len);
    bf.p_re.start = 0;
    for (int n = 0; n < len; ++n)
        bf.p_re.data[n] = ji * cfg.u[n] * std::polar(1.0, 2.0 * M_PI * i * (n - center) / m);

    bf.p_im.data.resize(len);
    bf.p_im.start = m / 2;  // p_im(z) = j z^{-M/2} p_re(z)
    for (int n = 0; n < len; ++n) bf.p_im.data[n] = cplx(0.0, 1.0) * bf.p_re.data[n];

    bf.q_re.data.resize(len);
    bf.q_re.start = -(len - 1);  // q_re[n] = conj(p_re[-n])
    for (int n = 0; n < len; ++n) bf.q_re.data[n] = std::conj(bf.p_re.data[len - 1 - n]);

    bf.q_im = bf.q_re;  // q_im(z) = z^{-M/2} q_re(z)
    bf.q_im.start += m / 2;
    return bf;
}

Signal sfb_modulate(const TmuxConfig& cfg, const std::vector<OqamFrame>& frames) {
    const int m = cfg.subcarriers;
    if (static_cast<int>(frames.size()) != m)
        throw std::invalid_argument("sfb_modulate: expected one frame per subcarrier");
    for (const OqamFrame& f : frames)
        if (f.re.size() != frames[0].re.size() || f.im.size() != frames[0].im.size() ||
            f.re.size() != f.im.size() || f.start != frames[0].start)
            throw std::invalid_argument("sfb_modulate: ragged frames");
    const long half = m / 2;
    const long len = static_cast<long>(frames[0].re.size());
    if (len == 0) return Signal();

    const long flt_len = static_cast<long>(cfg.overlap) * m;
    const long n_lo = frames[0].start * half + 0;
    const long n_hi = (frames[0].start + len - 1) * half + (flt_len - 1 + half);
    Signal x(std::vector<cplx>(n_hi - n_lo + 1, 0.0), n_lo);

    for (int i = 0; i < m; ++i) {
        const BranchFilters bf = branch_filters(cfg, i);
        for (long idx = 0; idx < len; ++idx) {
            const long n0 = (frames[i].start + idx) * half;
            const double vr = frames[i].re[idx];
            const double vi = frames[i].im[idx];
            if (vr != 0.0)
                kern::cmac(x.data.data() + (n0 + bf.p_re.start - x.start), bf.p_re.data.data(),
                           vr, bf.p_re.data.size());
            if (vi != 0.0)
                kern::cmac(x.data.data() + (n0 + bf.p_im.start - x.start), bf.p_im.data.data(),
                           vi, bf.p_im.data.size());
        }
    }
    return x;
}

std::vector<BranchSeq> afb_demodulate(const TmuxConfig& cfg, const Signal& signal) {
    const int m = cfg.subcarriers;
    std::vector<BranchSeq> out(m);
    if (signal.data.empty()) return out;
    for (int k = 0; k < m; ++k) {
        const BranchFilters bf = branch_filters(cfg, k);
        const Signal vr = convolve(signal, bf.q_re);
        const Signal vi = convolve(signal, bf.q_im);
        const long l_lo = static_cast<long>(std::floor(
            static_cast<double>(std::min(vr.start, vi.start)) / m));
        const long l_hi = static_cast<long>(std::ceil(
            static_cast<double>(std::max(vr.end(), vi.end())) / m));
        BranchSeq& b = out[k];
        b.re.start = b.im.start = l_lo;
        b.re.v.resize(l_hi - l_lo + 1);
        b.im.v.resize(l_hi - l_lo + 1);
        for (long l = l_lo; l <= l_hi; ++l) {
            b.re.v[l - l_lo] = vr.at(l * m).real();
            b.im.v[l - l_lo] = vi.at(l * m).imag();
        }
    }
    return out;
}

TmuxDelays tmux_delays(const TmuxConfig& cfg) {
    TmuxDelays d;
    d.transient = cfg.overlap;
    return d;
}

std::vector<cplx> recover_qam(const BranchSeq& branch, long l0, long count, long imag_offset) {
    std::vector<cplx> out(count);
    for (long l = 0; l < count; ++l)
        out[l] = cplx(branch.re.at(l0 + l), branch.im.at(l0 + l + imag_offset));
    return out;
}

}  // namespace fbmc
