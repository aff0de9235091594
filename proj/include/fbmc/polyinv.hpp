// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fbmc/polymat.hpp"

namespace fbmc {

struct InversionParams {
    int delay = 11;          // half-support d of the two-sided inverse
    double epsilon = -1.0;   // ridge; < 0 selects 1e-10 x leading normal-equation diagonal
};

// Least-squares inverse of a para-Hermitian-symmetric scalar polynomial.
// Returns b on lags [-d, d] minimizing ||C_a b - e0||_2 where C_a is the full
// convolution matrix of a and e0 the unit impulse at lag 0, via regularized
// normal equations solved with an in-house Cholesky.
LaurentPoly invert_scalar_poly(const LaurentPoly& a, const InversionParams& params);

// Per-diagonal inversion of a (near-)diagonal polynomial matrix.
PolyMatrix invert_diag(const PolyMatrix& a, const InversionParams& params);

// Solve h x = b for Hermitian positive definite h; false if a pivot fails.
bool cholesky_solve(CMat h, std::vector<cplx>& b);

}  // namespace fbmc
