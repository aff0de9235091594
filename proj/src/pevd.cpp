// SPDX-License-Identifier: Apache-2.0
#include "fbmc/pevd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fbmc {

namespace {

// S <- D S D~ with D = I except D(k,k) = z^-tau. Row k moves by +tau in lag,
// column k by -tau, the (k,k) entry stays put.
PolyMatrix delay_sym(const PolyMatrix& s, int k, long tau) {
    if (tau == 0 || s.is_zero()) return s;
    const int n = s.rows();
    const long grow = std::labs(tau);
    PolyMatrix out(n, n, s.lag_min() - grow, s.lag_max() + grow);
    for (long t = out.lag_min(); t <= out.lag_max(); ++t)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                long src = t;
                if (r == k && c != k) src = t - tau;
                if (c == k && r != k) src = t + tau;
                out.at(t, r, c) = s.get(src, r, c);
            }
    out.canonicalize();
    return out;
}

// Q <- Q D~ with D~(k,k) = z^+tau: column k picks up an advance of tau.
PolyMatrix delay_cols(const PolyMatrix& q, int k, long tau) {
    if (tau == 0 || q.is_zero()) return q;
    const long grow = std::labs(tau);
    PolyMatrix out(q.rows(), q.cols(), q.lag_min() - grow, q.lag_max() + grow);
    for (long t = out.lag_min(); t <= out.lag_max(); ++t)
        for (int r = 0; r < q.rows(); ++r)
            for (int c = 0; c < q.cols(); ++c)
                out.at(t, r, c) = q.get(c == k ? t + tau : t, r, c);
    out.canonicalize();
    return out;
}

// Elementary rotation R = I except R(j,j) = R(k,k) = cs, R(j,k) = -sn e^{i phi},
// R(k,j) = sn e^{-i phi}. Applies S <- R^H S R across all lags.
void rotate_sym(PolyMatrix& s, int j, int k, double cs, double sn, double phi) {
    const cplx ejp = std::polar(1.0, phi);
    const int n = s.rows();
    for (long t = s.lag_min(); t <= s.lag_max(); ++t) {
        cplx* sl = s.slice(t);
        for (int c = 0; c < n; ++c) {  // rows j,k: R^H S
            const cplx xj = sl[j * n + c], xk = sl[k * n + c];
            sl[j * n + c] = cs * xj + sn * ejp * xk;
            sl[k * n + c] = -sn * std::conj(ejp) * xj + cs * xk;
        }
        for (int r = 0; r < n; ++r) {  // cols j,k: S R
            const cplx xj = sl[r * n + j], xk = sl[r * n + k];
            sl[r * n + j] = cs * xj + sn * std::conj(ejp) * xk;
            sl[r * n + k] = -sn * ejp * xj + cs * xk;
        }
    }
}

// Q <- Q R (same R as above).
void rotate_cols(PolyMatrix& q, int j, int k, double cs, double sn, double phi) {
    const cplx ejp = std::polar(1.0, phi);
    const int n = q.cols();
    for (long t = q.lag_min(); t <= q.lag_max() && !q.is_zero(); ++t) {
        cplx* sl = q.slice(t);
        for (int r = 0; r < q.rows(); ++r) {
            const cplx xj = sl[r * n + j], xk = sl[r * n + k];
            sl[r * n + j] = cs * xj + sn * std::conj(ejp) * xk;
            sl[r * n + k] = -sn * ejp * xj + cs * xk;
        }
    }
}

// Q <- Q V for a constant unitary V.
void mul_const_right(PolyMatrix& q, const CMat& v) {
    const int n = q.cols();
    std::vector<cplx> row(n);
    for (long t = q.lag_min(); t <= q.lag_max() && !q.is_zero(); ++t) {
        cplx* sl = q.slice(t);
        for (int r = 0; r < q.rows(); ++r) {
            for (int c = 0; c < n; ++c) {
                cplx acc = 0.0;
                for (int m = 0; m < n; ++m) acc += sl[r * n + m] * v(m, c);
                row[c] = acc;
            }
            std::copy(row.begin(), row.end(), sl + r * n);
        }
    }
}

// S <- V^H S V per lag.
void conj_const(PolyMatrix& s, const CMat& v) {
    const int n = s.rows();
    CMat tmp(n, n);
    for (long t = s.lag_min(); t <= s.lag_max() && !s.is_zero(); ++t) {
        cplx* sl = s.slice(t);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx acc = 0.0;
                for (int m = 0; m < n; ++m) acc += std::conj(v(m, r)) * sl[m * n + c];
                tmp(r, c) = acc;
            }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx acc = 0.0;
                for (int m = 0; m < n; ++m) acc += tmp(r, m) * v(m, c);
                sl[r * n + c] = acc;
            }
    }
}

struct CoeffLoc {
    long tau = 0;
    int row = 0, col = 0;
    double mag = 0.0;
};

CoeffLoc find_dominant_coeff(const PolyMatrix& s) {
    CoeffLoc best;
    const int n = s.rows();
    for (long t = s.lag_min(); t <= s.lag_max() && !s.is_zero(); ++t) {
        const cplx* sl = s.slice(t);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                if (r == c) continue;
                const double m = std::abs(sl[r * n + c]);
                if (m > best.mag) best = {t, r, c, m};
            }
    }
    return best;
}

struct ColLoc {
    long tau = 0;
    int col = 0;
    double energy = 0.0;
};

ColLoc find_dominant_column(const PolyMatrix& s) {
    ColLoc best;
    const int n = s.rows();
    for (long t = s.lag_min(); t <= s.lag_max() && !s.is_zero(); ++t) {
        const cplx* sl = s.slice(t);
        for (int c = 0; c < n; ++c) {
            double e = 0.0;
            for (int r = 0; r < n; ++r)
                if (r != c) e += std::norm(sl[r * n + c]);
            if (e > best.energy) best = {t, c, e};
        }
    }
    return best;
}

bool all_finite(const PolyMatrix& m) {
    for (long t = m.lag_min(); t <= m.lag_max() && !m.is_zero(); ++t) {
        const cplx* sl = m.slice(t);
        for (int i = 0; i < m.rows() * m.cols(); ++i)
            if (!std::isfinite(sl[i].real()) || !std::isfinite(sl[i].imag())) return false;
    }
    return true;
}

}  // namespace

void hermitian_eig(const CMat& h_in, std::vector<double>& evals, CMat& evecs) {
    const int n = h_in.rows;
    CMat h = h_in;
    evecs = CMat::identity(n);
    double scale = 0.0;
    for (const cplx& x : h.v) scale = std::max(scale, std::abs(x));
    const double tol = 1e-15 * std::max(scale, 1.0);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
        if (off <= tol) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double m = std::abs(h(p, q));
                if (m <= tol) continue;
                const double phi = std::arg(h(p, q));
                const double theta = 0.5 * std::atan2(2.0 * m, h(p, p).real() - h(q, q).real());
                const double cs = std::cos(theta), sn = std::sin(theta);
                const cplx ejp = std::polar(1.0, phi);
                for (int c = 0; c < n; ++c) {  // rows: R^H H
                    const cplx xp = h(p, c), xq = h(q, c);
                    h(p, c) = cs * xp + sn * ejp * xq;
                    h(q, c) = -sn * std::conj(ejp) * xp + cs * xq;
                }
                for (int r = 0; r < n; ++r) {  // cols: H R
                    const cplx xp = h(r, p), xq = h(r, q);
                    h(r, p) = cs * xp + sn * std::conj(ejp) * xq;
                    h(r, q) = -sn * ejp * xp + cs * xq;
                    const cplx vp = evecs(r, p), vq = evecs(r, q);
                    evecs(r, p) = cs * vp + sn * std::conj(ejp) * vq;
                    evecs(r, q) = -sn * ejp * vp + cs * vq;
                }
            }
    }
    evals.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = h(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] > diag[b]; });
    CMat sorted(n, n);
    for (int c = 0; c < n; ++c) {
        evals[c] = diag[order[c]];
        for (int r = 0; r < n; ++r) sorted(r, c) = evecs(r, order[c]);
    }
    evecs = std::move(sorted);
}

PevdResult pevd_decompose(const PolyMatrix& r, const PevdParams& params) {
    if (r.rows() != r.cols()) throw std::invalid_argument("pevd_decompose: matrix not square");
    if (params.max_iterations < 1) throw std::invalid_argument("pevd_decompose: max_iterations < 1");
    if (params.trim_threshold < 0.0) throw std::invalid_argument("pevd_decompose: negative trim threshold");
    if (!all_finite(r)) throw std::invalid_argument("pevd_decompose: non-finite coefficients");
    const double norm0 = pm_fro_norm(r);
    if (norm0 > 0.0 && pm_fro_norm(pm_sub(r, pm_parah(r))) > 1e-8 * norm0)
        throw std::invalid_argument("pevd_decompose: input not para-Hermitian");

    const int n = r.rows();
    PevdResult res;
    res.a = r;
    res.q = PolyMatrix::identity(n);

    for (int it = 0; it < params.max_iterations; ++it) {
        if (params.algorithm == PevdAlgorithm::SBR2) {
            const CoeffLoc loc = find_dominant_coeff(res.a);
            if (loc.mag <= params.stop_threshold * norm0) break;
            res.a = delay_sym(res.a, loc.col, loc.tau);
            res.q = delay_cols(res.q, loc.col, loc.tau);
            const cplx g = res.a.get(0, loc.row, loc.col);
            const double phi = std::arg(g);
            const double theta = 0.5 * std::atan2(2.0 * std::abs(g),
                                                  res.a.get(0, loc.row, loc.row).real() -
                                                      res.a.get(0, loc.col, loc.col).real());
            res.a.ensure_lag(0);
            rotate_sym(res.a, loc.row, loc.col, std::cos(theta), std::sin(theta), phi);
            rotate_cols(res.q, loc.row, loc.col, std::cos(theta), std::sin(theta), phi);
        } else {
            const ColLoc loc = find_dominant_column(res.a);
            if (std::sqrt(loc.energy) <= params.stop_threshold * norm0) break;
            res.a = delay_sym(res.a, loc.col, loc.tau);
            res.q = delay_cols(res.q, loc.col, loc.tau);
            res.a.ensure_lag(0);
            CMat h(n, n);
            for (int rr = 0; rr < n; ++rr)
                for (int cc = 0; cc < n; ++cc) h(rr, cc) = res.a.get(0, rr, cc);
            std::vector<double> evals;
            CMat v;
            hermitian_eig(h, evals, v);
            conj_const(res.a, v);
            mul_const_right(res.q, v);
        }
        res.a.canonicalize();
        res.q.canonicalize();
        if (params.trim_threshold > 0.0) {
            res.a = pm_trim(res.a, params.trim_threshold);
            res.q = pm_trim(res.q, params.trim_threshold);
        }
        res.trace.push_back(pm_off_diag_energy(res.a));
        res.q_order_trace.push_back(res.q.is_zero() ? 0 : res.q.num_lags() - 1);
        res.a_order_trace.push_back(res.a.is_zero() ? 0 : res.a.num_lags() - 1);
        res.iterations_run = it + 1;
    }

    // Order diagonals by descending zero-lag value: A <- P A P^T, Q <- Q P^T.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return res.a.get(0, i, i).real() > res.a.get(0, j, j).real();
    });
    bool is_identity = true;
    for (int i = 0; i < n; ++i) is_identity = is_identity && order[i] == i;
    if (!is_identity) {
        PolyMatrix a_perm(n, n, res.a.lag_min(), res.a.lag_max());
        for (long t = res.a.lag_min(); t <= res.a.lag_max(); ++t)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a_perm.at(t, i, j) = res.a.get(t, order[i], order[j]);
        a_perm.canonicalize();
        res.a = std::move(a_perm);
        PolyMatrix q_perm(res.q.rows(), n, res.q.lag_min(), res.q.lag_max());
        for (long t = res.q.lag_min(); t <= res.q.lag_max(); ++t)
            for (int i = 0; i < res.q.rows(); ++i)
                for (int j = 0; j < n; ++j)
                    q_perm.at(t, i, j) = res.q.get(t, i, order[j]);
        q_perm.canonicalize();
        res.q = std::move(q_perm);
    }
    return res;
}

double spectral_majorization_defect(const PolyMatrix& a, int grid_size) {
    if (a.rows() != a.cols()) throw std::invalid_argument("spectral_majorization_defect: not square");
    if (grid_size < 1) throw std::invalid_argument("spectral_majorization_defect: bad grid");
    const double total = pm_fro_norm(a);
    if (total > 0.0 && pm_off_diag_energy(a) > 0.1 * total * total)
        throw std::invalid_argument("spectral_majorization_defect: input not diagonal");
    double defect = 0.0;
    for (int g = 0; g < grid_size; ++g) {
        const double omega = 2.0 * M_PI * g / grid_size;
        const CMat e = pm_eval(a, omega);
        for (int i = 0; i + 1 < a.rows(); ++i)
            defect += std::max(0.0, e(i + 1, i + 1).real() - e(i, i).real());
    }
    return defect;
}

}  // namespace fbmc
