#pragma once

#include <vector>

#include "psifun/matrix.hpp"

namespace psifun {

/// How the scaling exponent was chosen: s = max(ceil(log2(norm/theta)), 0),
/// so that norm/2^s <= theta (up to 1 ulp).
struct ScalingDecision {
  double theta = 0.0;
  double norm = 0.0;
  int s = 0;
};

ScalingDecision scaling_exponent(const Matrix& A, double theta);

/// phi_0(B) .. phi_ell_max(B) from the [d/d] Pade approximants
/// phi_j = D_{d,j}(B)^{-1} N_{d,j}(B).  Meant for the seed regime
/// ||B||_inf <= theta.  Powers of B are built once and shared across the
/// 2(ell_max+1) polynomials.
std::vector<Matrix> phi_seed(const Matrix& B, int ell_max, int d);

/// One doubling of the argument:
///   phi_0(2z) = phi_0(z)^2,
///   phi_l(2z) = 2^-l [ phi_0(z) phi_l(z) + sum_{j=1}^{l} phi_j(z)/(l-j)! ].
std::vector<Matrix> square_step(const std::vector<Matrix>& level);

/// Every level of the squaring recurrence: levels[k] holds
/// (phi_0, ..., phi_ell_max) at argument A/2^(s-k), so levels.front() is the
/// Pade seed at A/2^s and levels.back() is the target argument A.  All
/// s+1 levels stay resident: (s+1)(ell_max+1) n^2 scalars.
struct PhiLadder {
  int ell_max = 0;
  int s = 0;
  double theta = 0.0;
  std::vector<std::vector<Matrix>> levels;

  /// phi_j(A/2^i); i is the scaling exponent, i = s..0.
  const Matrix& phi(int i, int j) const { return levels[s - i][j]; }
};

PhiLadder phi_ladder(const Matrix& A, int ell_max, double theta, int d);

/// Defaults used throughout the experiments.
inline constexpr double kDefaultTheta = 4.0;
inline constexpr int kDefaultPadeDegree = 7;

}  // namespace psifun
