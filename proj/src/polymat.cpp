// SPDX-License-Identifier: Apache-2.0
#include "fbmc/polymat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "fbmc/kernels.hpp"

namespace fbmc {

namespace {
constexpr double kCanonTol = 1e-14;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(std::vector<cplx> coeffs, long lag_min)
    : coeffs_(std::move(coeffs)), lag_min_(lag_min) {
    canonicalize();
}

LaurentPoly LaurentPoly::constant(cplx v) { return LaurentPoly({v}, 0); }

LaurentPoly LaurentPoly::delta(long lag, cplx v) { return LaurentPoly({v}, lag); }

cplx LaurentPoly::at(long lag) const {
    if (lag < lag_min_ || lag > lag_max()) return 0.0;
    return coeffs_[lag - lag_min_];
}

void LaurentPoly::canonicalize() {
    double max_mag = 0.0;
    for (const cplx& c : coeffs_) max_mag = std::max(max_mag, std::abs(c));
    const double tol = kCanonTol * max_mag;
    std::size_t first = 0, last = coeffs_.size();
    while (first < last && std::abs(coeffs_[first]) <= tol) ++first;
    while (last > first && std::abs(coeffs_[last - 1]) <= tol) --last;
    if (first == last) {
        coeffs_.clear();
        lag_min_ = 0;
        return;
    }
    if (first > 0 || last < coeffs_.size()) {
        coeffs_ = std::vector<cplx>(coeffs_.begin() + first, coeffs_.begin() + last);
        lag_min_ += static_cast<long>(first);
    }
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long lo = std::min(a.lag_min(), b.lag_min());
    const long hi = std::max(a.lag_max(), b.lag_max());
    std::vector<cplx> out(hi - lo + 1, 0.0);
    for (long t = a.lag_min(); t <= a.lag_max(); ++t) out[t - lo] += a.at(t);
    for (long t = b.lag_min(); t <= b.lag_max(); ++t) out[t - lo] += b.at(t);
    return LaurentPoly(std::move(out), lo);
}

LaurentPoly lp_conv(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly();
    std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        kern::cmac(out.data() + i, b.coeffs().data(), a.coeffs()[i], b.size());
    return LaurentPoly(std::move(out), a.lag_min() + b.lag_min());
}

LaurentPoly lp_parah(const LaurentPoly& a) {
    if (a.is_zero()) return a;
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::conj(a.coeffs()[a.size() - 1 - i]);
    return LaurentPoly(std::move(out), -a.lag_max());
}

LaurentPoly lp_scale(const LaurentPoly& a, cplx s) {
    std::vector<cplx> out(a.coeffs());
    for (cplx& c : out) c *= s;
    return LaurentPoly(std::move(out), a.lag_min());
}

double lp_norm(const LaurentPoly& a) {
    return std::sqrt(kern::energy(a.coeffs().data(), a.size()));
}

cplx lp_eval(const LaurentPoly& a, double omega) {
    cplx acc = 0.0;
    for (long t = a.lag_min(); t <= a.lag_max(); ++t)
        acc += a.at(t) * std::polar(1.0, -omega * static_cast<double>(t));
    return acc;
}

// ----------------------------------------------------------------------- CMat

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

// ----------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("PolyMatrix: bad dimensions");
}

PolyMatrix::PolyMatrix(int rows, int cols, long lag_min, long lag_max)
    : rows_(rows), cols_(cols), lag_min_(lag_min) {
    if (rows <= 0 || cols <= 0 || lag_max < lag_min)
        throw std::invalid_argument("PolyMatrix: bad dimensions");
    c_.assign(static_cast<std::size_t>(lag_max - lag_min + 1) * rows * cols, 0.0);
}

PolyMatrix PolyMatrix::identity(int n) {
    PolyMatrix m(n, n, 0, 0);
    for (int i = 0; i < n; ++i) m.at(0, i, i) = 1.0;
    return m;
}

cplx& PolyMatrix::at(long lag, int r, int c) {
    return c_[((lag - lag_min_) * rows_ + r) * cols_ + c];
}

cplx PolyMatrix::get(long lag, int r, int c) const {
    if (c_.empty() || lag < lag_min_ || lag > lag_max()) return 0.0;
    return c_[((lag - lag_min_) * rows_ + r) * cols_ + c];
}

void PolyMatrix::ensure_lag(long lag) {
    const std::size_t rc = static_cast<std::size_t>(rows_) * cols_;
    if (c_.empty()) {
        lag_min_ = lag;
        c_.assign(rc, 0.0);
        return;
    }
    if (lag < lag_min_) {
        std::vector<cplx> grown((lag_min_ - lag) * rc, 0.0);
        grown.insert(grown.end(), c_.begin(), c_.end());
        c_ = std::move(grown);
        lag_min_ = lag;
    } else if (lag > lag_max()) {
        c_.resize(c_.size() + (lag - lag_max()) * rc, 0.0);
    }
}

LaurentPoly PolyMatrix::entry(int r, int c) const {
    if (c_.empty()) return LaurentPoly();
    std::vector<cplx> out(num_lags());
    for (long i = 0; i < num_lags(); ++i)
        out[i] = c_[(i * rows_ + r) * cols_ + c];
    return LaurentPoly(std::move(out), lag_min_);
}

void PolyMatrix::set_entry(int r, int c, const LaurentPoly& p) {
    if (p.is_zero()) return;
    ensure_lag(p.lag_min());
    ensure_lag(p.lag_max());
    for (long t = p.lag_min(); t <= p.lag_max(); ++t) at(t, r, c) = p.at(t);
}

double PolyMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& c : c_) m = std::max(m, std::abs(c));
    return m;
}

void PolyMatrix::canonicalize() {
    if (c_.empty()) {
        lag_min_ = 0;
        return;
    }
    const std::size_t rc = static_cast<std::size_t>(rows_) * cols_;
    const double tol = kCanonTol * max_abs();
    auto slice_zero = [&](long i) {
        const cplx* s = c_.data() + i * rc;
        for (std::size_t j = 0; j < rc; ++j)
            if (std::abs(s[j]) > tol) return false;
        return true;
    };
    long first = 0, last = num_lags();
    while (first < last && slice_zero(first)) ++first;
    while (last > first && slice_zero(last - 1)) --last;
    if (first == last) {
        c_.clear();
        lag_min_ = 0;
        return;
    }
    if (first > 0 || last < num_lags()) {
        c_ = std::vector<cplx>(c_.begin() + first * rc, c_.begin() + last * rc);
        lag_min_ += first;
    }
}

// ----------------------------------------------------------------- operations

PolyMatrix pm_add(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("pm_add: dimension mismatch");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long lo = std::min(a.lag_min(), b.lag_min());
    const long hi = std::max(a.lag_max(), b.lag_max());
    PolyMatrix out(a.rows(), a.cols(), lo, hi);
    const std::size_t rc = static_cast<std::size_t>(a.rows()) * a.cols();
    for (long t = a.lag_min(); t <= a.lag_max(); ++t)
        kern::cmac(out.slice(t), a.slice(t), 1.0, rc);
    for (long t = b.lag_min(); t <= b.lag_max(); ++t)
        kern::cmac(out.slice(t), b.slice(t), 1.0, rc);
    out.canonicalize();
    return out;
}

PolyMatrix pm_sub(const PolyMatrix& a, const PolyMatrix& b) {
    return pm_add(a, pm_scale(b, -1.0));
}

PolyMatrix pm_scale(const PolyMatrix& a, cplx s) {
    if (a.is_zero()) return a;
    PolyMatrix out(a.rows(), a.cols(), a.lag_min(), a.lag_max());
    const std::size_t n = static_cast<std::size_t>(a.num_lags()) * a.rows() * a.cols();
    kern::cmac(out.slice(a.lag_min()), a.slice(a.lag_min()), s, n);
    out.canonicalize();
    return out;
}

PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("pm_mul: dimension mismatch");
    if (a.is_zero() || b.is_zero()) return PolyMatrix(a.rows(), b.cols());
    const long la = a.num_lags(), lb = b.num_lags();
    PolyMatrix out(a.rows(), b.cols(), a.lag_min() + b.lag_min(), a.lag_max() + b.lag_max());
    std::vector<cplx> av(la), bv(lb), acc(la + lb - 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < b.cols(); ++c) {
            std::fill(acc.begin(), acc.end(), cplx(0.0));
            for (int j = 0; j < a.cols(); ++j) {
                for (long i = 0; i < la; ++i) av[i] = a.slice(a.lag_min() + i)[r * a.cols() + j];
                for (long i = 0; i < lb; ++i) bv[i] = b.slice(b.lag_min() + i)[j * b.cols() + c];
                for (long i = 0; i < la; ++i) {
                    if (av[i] == cplx(0.0)) continue;
                    kern::cmac(acc.data() + i, bv.data(), av[i], lb);
                }
            }
            for (long i = 0; i < la + lb - 1; ++i)
                out.slice(out.lag_min() + i)[r * out.cols() + c] = acc[i];
        }
    }
    out.canonicalize();
    return out;
}

PolyMatrix pm_parah(const PolyMatrix& a) {
    if (a.is_zero()) return PolyMatrix(a.cols(), a.rows());
    PolyMatrix out(a.cols(), a.rows(), -a.lag_max(), -a.lag_min());
    for (long t = a.lag_min(); t <= a.lag_max(); ++t)
        for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c)
                out.at(-t, c, r) = std::conj(a.get(t, r, c));
    return out;
}

double pm_fro_norm(const PolyMatrix& a) {
    if (a.is_zero()) return 0.0;
    const std::size_t n = static_cast<std::size_t>(a.num_lags()) * a.rows() * a.cols();
    return std::sqrt(kern::energy(a.slice(a.lag_min()), n));
}

CMat pm_eval(const PolyMatrix& a, double omega) {
    CMat out(a.rows(), a.cols());
    const std::size_t rc = static_cast<std::size_t>(a.rows()) * a.cols();
    for (long t = a.lag_min(); t <= a.lag_max() && !a.is_zero(); ++t) {
        const cplx w = std::polar(1.0, -omega * static_cast<double>(t));
        kern::cmac(out.v.data(), a.slice(t), w, rc);
    }
    return out;
}

double pm_off_diag_energy(const PolyMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("pm_off_diag_energy: matrix not square");
    double acc = 0.0;
    for (long t = a.lag_min(); t <= a.lag_max() && !a.is_zero(); ++t) {
        const cplx* s = a.slice(t);
        for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c)
                if (r != c) acc += std::norm(s[r * a.cols() + c]);
    }
    return acc;
}

PolyMatrix pm_trim(const PolyMatrix& a, double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("pm_trim: negative threshold");
    if (a.is_zero()) return a;
    const std::size_t rc = static_cast<std::size_t>(a.rows()) * a.cols();
    const long n = a.num_lags();
    std::vector<double> norms(n);
    for (long i = 0; i < n; ++i)
        norms[i] = std::sqrt(kern::energy(a.slice(a.lag_min() + i), rc));
    const double total = pm_fro_norm(a);
    // Never trim past the dominant slice, so threshold 1 keeps exactly it.
    const long imax_first = std::max_element(norms.begin(), norms.end()) - norms.begin();
    const long imax_last = n - 1 - (std::max_element(norms.rbegin(), norms.rend()) - norms.rbegin());
    long first = 0, last = n;
    while (first < imax_first && norms[first] <= threshold * total) ++first;
    while (last - 1 > imax_last && norms[last - 1] <= threshold * total) --last;
    if (first == 0 && last == n) return a;
    PolyMatrix out(a.rows(), a.cols(), a.lag_min() + first, a.lag_min() + last - 1);
    for (long i = first; i < last; ++i)
        std::copy(a.slice(a.lag_min() + i), a.slice(a.lag_min() + i) + rc,
                  out.slice(a.lag_min() + i));
    return out;
}

PolyMatrix pm_shift(const PolyMatrix& a, long shift) {
    if (a.is_zero()) return a;
    PolyMatrix shifted(a.rows(), a.cols(), a.lag_min() + shift, a.lag_max() + shift);
    const std::size_t n = static_cast<std::size_t>(a.num_lags()) * a.rows() * a.cols();
    std::copy(a.slice(a.lag_min()), a.slice(a.lag_min()) + n, shifted.slice(shifted.lag_min()));
    return shifted;
}

long pm_nnz(const PolyMatrix& a, double rel_tol) {
    if (a.is_zero()) return 0;
    const double tol = rel_tol * a.max_abs();
    long count = 0;
    const std::size_t n = static_cast<std::size_t>(a.num_lags()) * a.rows() * a.cols();
    const cplx* p = a.slice(a.lag_min());
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(p[i]) > tol) ++count;
    return count;
}

std::string pm_to_debug_text(const PolyMatrix& a) {
    std::ostringstream os;
    os << "PolyMatrix rows=" << a.rows() << " cols=" << a.cols()
       << " lag_min=" << a.lag_min() << " lags=" << (a.is_zero() ? 0 : a.num_lags()) << "\n";
    char buf[64];
    for (long t = a.lag_min(); !a.is_zero() && t <= a.lag_max(); ++t) {
        os << "lag " << t << ":";
        for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c) {
                const cplx x = a.get(t, r, c);
                std::snprintf(buf, sizeof buf, " %.17g %.17g", x.real(), x.imag());
                os << buf;
            }
        os << "\n";
    }
    return os.str();
}

PolyMatrix pm_from_debug_text(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    is >> tag;
    if (tag != "PolyMatrix") throw std::invalid_argument("pm_from_debug_text: bad header");
    auto field = [&](const char* name) {
        std::string tok;
        is >> tok;
        const std::string prefix = std::string(name) + "=";
        if (tok.rfind(prefix, 0) != 0)
            throw std::invalid_argument("pm_from_debug_text: expected " + prefix);
        return std::stol(tok.substr(prefix.size()));
    };
    const int rows = static_cast<int>(field("rows"));
    const int cols = static_cast<int>(field("cols"));
    const long lag_min = field("lag_min");
    const long lags = field("lags");
    if (lags == 0) return PolyMatrix(rows, cols);
    PolyMatrix out(rows, cols, lag_min, lag_min + lags - 1);
    for (long i = 0; i < lags; ++i) {
        std::string lag_tok, lag_val;
        is >> lag_tok >> lag_val;  // "lag" "<t>:"
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                double re, im;
                is >> re >> im;
                out.at(lag_min + i, r, c) = cplx(re, im);
            }
    }
    if (!is) throw std::invalid_argument("pm_from_debug_text: truncated input");
    out.canonicalize();
    return out;
}

}  // namespace fbmc
