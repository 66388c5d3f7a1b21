#pragma once

#include "psifun/matrix.hpp"

namespace psifun {

/// Reference-grade phi_ell(A) for small and medium instances: scale A down
/// to ||A/2^t||_inf <= 1/16, sum a 30-term Taylor series per order with
/// compensated accumulation, then undo the scaling through the doubling
/// recurrence.  Built from different numerics than the production pipeline
/// (Taylor seeds instead of Pade solves) so agreement between the two is
/// evidence rather than tautology.
Matrix phi_oracle(const Matrix& A, int ell);

/// Reference psi_ell(A) = phi_ell(A)^{-1} by direct factorization.
Matrix psi_oracle(const Matrix& A, int ell);

}  // namespace psifun
