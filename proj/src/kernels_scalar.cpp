// SPDX-License-Identifier: Apache-2.0
#include "fbmc/kernels.hpp"

namespace fbmc::kern::scalar {

void cmac(cplx* dst, const cplx* src, cplx s, std::size_t n) {
    const double sr = s.real(), si = s.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = src[i].real(), ai = src[i].imag();
        dst[i] += cplx(sr * ar - si * ai, sr * ai + si * ar);
    }
}

double energy(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

}  // namespace fbmc::kern::scalar
