// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace fbmc {

using cplx = std::complex<double>;

// Scalar Laurent polynomial: coefficients over a contiguous signed lag
// window [lag_min, lag_min + size - 1]. The zero polynomial is stored as an
// empty coefficient vector with lag_min = 0. Canonical form keeps nonzero
// first/last coefficients (numerical zero: <= 1e-14 x max magnitude).
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(std::vector<cplx> coeffs, long lag_min);
    static LaurentPoly constant(cplx v);
    static LaurentPoly delta(long lag, cplx v = 1.0);

    bool is_zero() const { return coeffs_.empty(); }
    long lag_min() const { return lag_min_; }
    long lag_max() const { return lag_min_ + static_cast<long>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    // Coefficient at an absolute lag; zero outside the stored window.
    cplx at(long lag) const;

    void canonicalize();

private:
    std::vector<cplx> coeffs_;
    long lag_min_ = 0;
};

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_conv(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_parah(const LaurentPoly& a);  // b[t] = conj(a[-t])
LaurentPoly lp_scale(const LaurentPoly& a, cplx s);
double lp_norm(const LaurentPoly& a);
cplx lp_eval(const LaurentPoly& a, double omega);

// Constant complex matrix, row-major. Carrier for evaluated polynomial
// matrices and the small dense solves (Jacobi EVD, Cholesky).
struct CMat {
    int rows = 0, cols = 0;
    std::vector<cplx> v;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c) {}
    static CMat identity(int n);

    cplx& operator()(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    const cplx& operator()(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

// Matrix of Laurent polynomials stored as a dense coefficient tensor indexed
// (lag, row, col); all entries share one lag window. PEVD fills matrices
// densely, so sparse storage buys nothing here.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols);  // zero matrix (empty lag window)
    PolyMatrix(int rows, int cols, long lag_min, long lag_max);  // zero-filled window
    static PolyMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_zero() const { return c_.empty(); }
    long lag_min() const { return lag_min_; }
    long lag_max() const { return lag_min_ + num_lags() - 1; }
    long num_lags() const { return static_cast<long>(c_.size()) / (rows_ * cols_); }

    // In-window access.
    cplx& at(long lag, int r, int c);
    // Read anywhere; zero outside the window.
    cplx get(long lag, int r, int c) const;
    // Grow the window so that `lag` becomes addressable.
    void ensure_lag(long lag);

    cplx* slice(long lag) { return c_.data() + (lag - lag_min_) * rows_ * cols_; }
    const cplx* slice(long lag) const { return c_.data() + (lag - lag_min_) * rows_ * cols_; }

    LaurentPoly entry(int r, int c) const;
    void set_entry(int r, int c, const LaurentPoly& p);

    double max_abs() const;
    void canonicalize();

private:
    int rows_ = 0, cols_ = 0;
    long lag_min_ = 0;
    std::vector<cplx> c_;
};

PolyMatrix pm_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_sub(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_scale(const PolyMatrix& a, cplx s);
PolyMatrix pm_parah(const PolyMatrix& a);
double pm_fro_norm(const PolyMatrix& a);
CMat pm_eval(const PolyMatrix& a, double omega);
double pm_off_diag_energy(const PolyMatrix& a);
PolyMatrix pm_trim(const PolyMatrix& a, double threshold);

// Multiply by z^{-shift}: coefficient lags move by +shift.
PolyMatrix pm_shift(const PolyMatrix& a, long shift);

// Coefficients with magnitude above rel_tol x max magnitude.
long pm_nnz(const PolyMatrix& a, double rel_tol = 1e-12);

// Structured text form for golden-file tests: dimensions, lag window, then
// one row-major "re im" coefficient list per lag.
std::string pm_to_debug_text(const PolyMatrix& a);
PolyMatrix pm_from_debug_text(const std::string& text);

}  // namespace fbmc
