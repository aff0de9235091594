// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace fbmc {

using cplx = std::complex<double>;

// Complex sample sequence with an explicit time origin: data[i] is the sample
// at absolute index start + i. Convolution adds origins, which keeps every
// filter-bank and channel alignment mechanical.
struct Signal {
    std::vector<cplx> data;
    long start = 0;

    Signal() = default;
    Signal(std::vector<cplx> d, long s) : data(std::move(d)), start(s) {}

    long size() const { return static_cast<long>(data.size()); }
    long end() const { return start + size() - 1; }

    cplx at(long n) const {
        if (n < start || n > end()) return 0.0;
        return data[n - start];
    }
};

Signal convolve(const Signal& a, const Signal& b);
double signal_energy(const Signal& a);

// Real-valued sequence with an origin (symbol-rate branch outputs).
struct RealSeq {
    std::vector<double> v;
    long start = 0;

    long size() const { return static_cast<long>(v.size()); }
    long end() const { return start + size() - 1; }

    double at(long n) const {
        if (n < start || n > end()) return 0.0;
        return v[n - start];
    }
};

}  // namespace fbmc
