// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Runtime-dispatched arithmetic kernels for the complex inner loops shared by
// the polynomial-matrix and filter-bank code: fused multiply-accumulate,
// energy reductions and correlation sums. A scalar reference implementation
// is always available; on x86-64 an AVX2/FMA variant is selected at startup
// when the CPU supports it. The two backends are equivalence-tested against
// each other.
namespace fbmc::kern {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

// Backend active for subsequent kernel calls. The default is the fastest
// supported one; FBMC_KERNEL_BACKEND=scalar|avx2 in the environment or
// set_backend() override it.
Backend active_backend();
void set_backend(Backend b);
bool avx2_supported();
std::string backend_name(Backend b);

// dst[i] += s * src[i]
void cmac(cplx* dst, const cplx* src, cplx s, std::size_t n);

// sum |x[i]|^2
double energy(const cplx* x, std::size_t n);

// sum a[i] * conj(b[i])
cplx cdot(const cplx* a, const cplx* b, std::size_t n);

// Scalar reference implementations, exposed for equivalence tests.
namespace scalar {
void cmac(cplx* dst, const cplx* src, cplx s, std::size_t n);
double energy(const cplx* x, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
}  // namespace scalar

#if defined(FBMC_HAVE_AVX2)
namespace avx2 {
void cmac(cplx* dst, const cplx* src, cplx s, std::size_t n);
double energy(const cplx* x, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace fbmc::kern
