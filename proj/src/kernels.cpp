// SPDX-License-Identifier: Apache-2.0
#include "fbmc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fbmc::kern {

bool avx2_supported() {
#if defined(FBMC_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Backend pick_default() {
    if (const char* env = std::getenv("FBMC_KERNEL_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = pick_default();

}  // namespace

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) b = Backend::scalar;
    g_backend = b;
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void cmac(cplx* dst, const cplx* src, cplx s, std::size_t n) {
#if defined(FBMC_HAVE_AVX2)
    if (g_backend == Backend::avx2) return avx2::cmac(dst, src, s, n);
#endif
    scalar::cmac(dst, src, s, n);
}

double energy(const cplx* x, std::size_t n) {
#if defined(FBMC_HAVE_AVX2)
    if (g_backend == Backend::avx2) return avx2::energy(x, n);
#endif
    return scalar::energy(x, n);
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
#if defined(FBMC_HAVE_AVX2)
    if (g_backend == Backend::avx2) return avx2::cdot(a, b, n);
#endif
    return scalar::cdot(a, b, n);
}

}  // namespace fbmc::kern
