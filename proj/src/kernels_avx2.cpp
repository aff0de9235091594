// SPDX-License-Identifier: Apache-2.0
#include "fbmc/kernels.hpp"

#include <immintrin.h>

// 4 doubles per vector = 2 interleaved complex values [re0 im0 re1 im1].
namespace fbmc::kern::avx2 {

namespace {
inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
}  // namespace

void cmac(cplx* dst, const cplx* src, cplx s, std::size_t n) {
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    double* d = reinterpret_cast<double*>(dst);
    const double* a = reinterpret_cast<const double*>(src);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, d += 4, a += 4) {
        __m256d v = _mm256_loadu_pd(a);
        __m256d vswap = _mm256_permute_pd(v, 0x5);  // [im0 re0 im1 re1]
        __m256d prod = _mm256_fmaddsub_pd(v, sr, _mm256_mul_pd(vswap, si));
        _mm256_storeu_pd(d, _mm256_add_pd(_mm256_loadu_pd(d), prod));
    }
    if (i < n) scalar::cmac(dst + i, src + i, s, n - i);
}

double energy(const cplx* x, std::size_t n) {
    const double* a = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, a += 4) {
        __m256d v = _mm256_loadu_pd(a);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double out = hsum(acc);
    if (i < n) out += scalar::energy(x + i, n - i);
    return out;
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    __m256d re_acc = _mm256_setzero_pd();
    __m256d im_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, pa += 4, pb += 4) {
        __m256d va = _mm256_loadu_pd(pa);
        __m256d vb = _mm256_loadu_pd(pb);
        re_acc = _mm256_fmadd_pd(va, vb, re_acc);
        __m256d vaswap = _mm256_permute_pd(va, 0x5);
        im_acc = _mm256_fmadd_pd(_mm256_mul_pd(vaswap, vb), sign, im_acc);
    }
    cplx out(hsum(re_acc), hsum(im_acc));
    if (i < n) out += scalar::cdot(a + i, b + i, n - i);
    return out;
}

}  // namespace fbmc::kern::avx2
