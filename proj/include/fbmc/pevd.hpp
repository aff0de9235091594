// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbmc/polymat.hpp"

namespace fbmc {

enum class PevdAlgorithm { SBR2, SMD };

struct PevdParams {
    PevdAlgorithm algorithm = PevdAlgorithm::SBR2;
    int max_iterations = 30;
    double trim_threshold = 0.0;  // mu: per-iteration edge trim of Q and A; 0 disables
    double stop_threshold = 0.0;  // early stop on dominant coefficient vs ||R||_F
};

struct PevdResult {
    PolyMatrix q;               // para-unitary eigenvectors, R = Q A Q~
    PolyMatrix a;               // near-diagonal para-Hermitian eigenvalues
    std::vector<double> trace;  // off-diagonal energy after each iteration
    std::vector<long> q_order_trace, a_order_trace;  // lag counts per iteration
    int iterations_run = 0;
};

// Iterative PEVD of a para-Hermitian matrix.
//
// SBR2: per iteration, the largest off-diagonal coefficient over all lags is
// brought to lag zero by an elementary delay and zeroed by a Jacobi rotation.
// SMD: per iteration, the column with the largest off-diagonal energy at any
// lag is brought to lag zero and the whole zero-lag slice is diagonalized by
// a full Hermitian EVD (cyclic Jacobi).
//
// Diagonal entries are finally permuted by descending zero-lag value so the
// eigenvalue PSDs come out spectrally majorized in practice.
PevdResult pevd_decompose(const PolyMatrix& r, const PevdParams& params);

// Majorization defect of a (near-)diagonal eigenvalue matrix: sum over an
// omega grid and adjacent diagonal pairs of max(0, psd[i+1] - psd[i]).
// Zero means perfectly majorized.
double spectral_majorization_defect(const PolyMatrix& a, int grid_size);

// Hermitian EVD via cyclic Jacobi sweeps; eigenvalues descending, h = V diag(w) V^H.
void hermitian_eig(const CMat& h, std::vector<double>& evals, CMat& evecs);

}  // namespace fbmc
