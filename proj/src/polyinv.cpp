// SPDX-License-Identifier: Apache-2.0
#include "fbmc/polyinv.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fbmc {

bool cholesky_solve(CMat h, std::vector<cplx>& b) {
    const int n = h.rows;
    // In-place LL^H factorization (lower triangle).
    for (int j = 0; j < n; ++j) {
        double d = h(j, j).real();
        for (int m = 0; m < j; ++m) d -= std::norm(h(j, m));
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        h(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            cplx acc = h(i, j);
            for (int m = 0; m < j; ++m) acc -= h(i, m) * std::conj(h(j, m));
            h(i, j) = acc / ljj;
        }
    }
    // L y = b
    for (int i = 0; i < n; ++i) {
        cplx acc = b[i];
        for (int m = 0; m < i; ++m) acc -= h(i, m) * b[m];
        b[i] = acc / h(i, i).real();
    }
    // L^H x = y
    for (int i = n - 1; i >= 0; --i) {
        cplx acc = b[i];
        for (int m = i + 1; m < n; ++m) acc -= std::conj(h(m, i)) * b[m];
        b[i] = acc / h(i, i).real();
    }
    return true;
}

LaurentPoly invert_scalar_poly(const LaurentPoly& a, const InversionParams& params) {
    if (a.is_zero()) throw std::invalid_argument("invert_scalar_poly: zero polynomial");
    if (params.delay < 0) throw std::invalid_argument("invert_scalar_poly: negative delay");
    double max_mag = 0.0;
    for (const cplx& c : a.coeffs()) max_mag = std::max(max_mag, std::abs(c));
    for (long t = a.lag_min(); t <= a.lag_max(); ++t)
        if (std::abs(a.at(t) - std::conj(a.at(-t))) > 1e-6 * max_mag)
            throw std::invalid_argument("invert_scalar_poly: input not para-Hermitian symmetric");

    const long d = params.delay;
    const long ha = std::max(a.lag_max(), -a.lag_min());
    const long out_half = d + ha;
    const int n_rows = static_cast<int>(2 * out_half + 1);
    const int n_cols = static_cast<int>(2 * d + 1);

    // C(o, i) = a[o - i], o in [-out_half, out_half], i in [-d, d].
    auto c_at = [&](int ro, int ci) { return a.at((ro - out_half) - (ci - d)); };

    CMat gram(n_cols, n_cols);
    for (int i = 0; i < n_cols; ++i)
        for (int j = i; j < n_cols; ++j) {
            cplx acc = 0.0;
            for (int o = 0; o < n_rows; ++o) acc += std::conj(c_at(o, i)) * c_at(o, j);
            gram(i, j) = acc;
            gram(j, i) = std::conj(acc);
        }
    std::vector<cplx> rhs(n_cols);
    for (int i = 0; i < n_cols; ++i) rhs[i] = std::conj(c_at(static_cast<int>(out_half), i));

    const double eps =
        params.epsilon < 0.0 ? 1e-10 * gram(0, 0).real() : params.epsilon;
    for (int i = 0; i < n_cols; ++i) gram(i, i) += eps;

    if (!cholesky_solve(gram, rhs))
        throw std::runtime_error(
            "invert_scalar_poly: singular normal equations (spectrally deficient eigenvalue)");
    return LaurentPoly(std::move(rhs), -d);
}

PolyMatrix invert_diag(const PolyMatrix& a, const InversionParams& params) {
    if (a.rows() != a.cols()) throw std::invalid_argument("invert_diag: matrix not square");
    const double total = pm_fro_norm(a);
    if (total > 0.0 && pm_off_diag_energy(a) > 0.1 * total * total)
        throw std::invalid_argument("invert_diag: input not diagonal");
    PolyMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        try {
            out.set_entry(i, i, invert_scalar_poly(a.entry(i, i), params));
        } catch (const std::exception& e) {
            throw std::runtime_error("invert_diag: diagonal " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace fbmc
