// SPDX-License-Identifier: Apache-2.0
#include "fbmc/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmc/kernels.hpp"

namespace fbmc {

double evm(const std::vector<cplx>& rx, const std::vector<cplx>& ref) {
    if (rx.size() != ref.size()) throw std::invalid_argument("evm: length mismatch");
    if (ref.empty()) throw std::invalid_argument("evm: empty input");
    double err = 0.0, pwr = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        err += std::norm(rx[i] - ref[i]);
        pwr += std::norm(ref[i]);
    }
    if (pwr <= 0.0) throw std::invalid_argument("evm: zero reference power");
    return 100.0 * std::sqrt(err / pwr);
}

namespace {

// Gray code per axis: 2 levels for 4-QAM, 4 levels for 16-QAM.
int gray_level(const int* bits, int nbits) {
    if (nbits == 1) return bits[0] ? 1 : -1;          // 0 -> -1, 1 -> +1
    const int b1 = bits[0], b0 = bits[1];             // 00 01 11 10 -> -3 -1 +1 +3
    if (!b1) return b0 ? -1 : -3;
    return b0 ? 1 : 3;
}

void gray_bits(int level, int nbits, int* bits) {
    if (nbits == 1) {
        bits[0] = level > 0 ? 1 : 0;
        return;
    }
    switch (level) {
        case -3: bits[0] = 0; bits[1] = 0; break;
        case -1: bits[0] = 0; bits[1] = 1; break;
        case 1: bits[0] = 1; bits[1] = 1; break;
        default: bits[0] = 1; bits[1] = 0; break;
    }
}

int slice_level(double x, int nbits) {
    if (nbits == 1) return x > 0.0 ? 1 : -1;
    if (x < -2.0) return -3;
    if (x < 0.0) return -1;
    if (x < 2.0) return 1;
    return 3;
}

double qam_scale(int order) { return order == 4 ? std::sqrt(0.5) : std::sqrt(0.1); }

void check_order(int order) {
    if (order != 4 && order != 16) throw std::invalid_argument("qam: order must be 4 or 16");
}

}  // namespace

std::vector<cplx> qam_map(const std::vector<int>& bits, int order) {
    check_order(order);
    const int bps = order == 4 ? 2 : 4;
    if (bits.size() % bps != 0) throw std::invalid_argument("qam_map: ragged bit count");
    const int axis_bits = bps / 2;
    const double s = qam_scale(order);
    std::vector<cplx> out(bits.size() / bps);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int* b = bits.data() + i * bps;
        out[i] = s * cplx(gray_level(b, axis_bits), gray_level(b + axis_bits, axis_bits));
    }
    return out;
}

std::vector<int> qam_demap(const std::vector<cplx>& symbols, int order) {
    check_order(order);
    const int bps = order == 4 ? 2 : 4;
    const int axis_bits = bps / 2;
    const double inv_s = 1.0 / qam_scale(order);
    std::vector<int> out(symbols.size() * bps);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        int* b = out.data() + i * bps;
        gray_bits(slice_level(symbols[i].real() * inv_s, axis_bits), axis_bits, b);
        gray_bits(slice_level(symbols[i].imag() * inv_s, axis_bits), axis_bits, b + axis_bits);
    }
    return out;
}

double ber(const std::vector<int>& rx_bits, const std::vector<int>& tx_bits) {
    if (rx_bits.size() != tx_bits.size()) throw std::invalid_argument("ber: length mismatch");
    if (rx_bits.empty()) return 0.0;
    long errs = 0;
    for (std::size_t i = 0; i < rx_bits.size(); ++i)
        if (rx_bits[i] != tx_bits[i]) ++errs;
    return static_cast<double>(errs) / rx_bits.size();
}

cplx scalar_equalize(const std::vector<cplx>& rx, const std::vector<cplx>& ref) {
    if (rx.size() != ref.size()) throw std::invalid_argument("scalar_equalize: length mismatch");
    const cplx num = kern::cdot(ref.data(), rx.data(), ref.size());  // sum ref conj(rx)
    const double den = kern::energy(rx.data(), rx.size());
    if (den <= 0.0) return 1.0;
    return num / den;
}

double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace fbmc
