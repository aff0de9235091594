// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbmc/signal.hpp"

namespace fbmc {

struct MetricsReport {
    double evm_percent = 0.0;
    double ber = 0.0;
    long bit_count = 0;
    long symbol_count = 0;
    std::vector<double> per_subcarrier_evm;
};

// 100 * sqrt(mean|rx - ref|^2 / mean|ref|^2)
double evm(const std::vector<cplx>& rx, const std::vector<cplx>& ref);

// Gray-mapped square QAM with unit average power; order 4 or 16. Bits per
// symbol split half to the I axis, half to Q.
std::vector<cplx> qam_map(const std::vector<int>& bits, int order);
std::vector<int> qam_demap(const std::vector<cplx>& symbols, int order);

double ber(const std::vector<int>& rx_bits, const std::vector<int>& tx_bits);

// Least-squares scalar c minimizing ||ref - c rx||; removes the pipeline's
// fixed gain/rotation before EVM and BER.
cplx scalar_equalize(const std::vector<cplx>& rx, const std::vector<cplx>& ref);

// Gaussian tail probability Q(x); test oracle for analytic AWGN BER.
double qfunc(double x);

}  // namespace fbmc
