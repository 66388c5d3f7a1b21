#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psifun/scalar_phi.hpp"

namespace psifun {

/// Largest diagonal Pade degree generated; conditioning of the coefficient
/// build degrades beyond this in double precision.
inline constexpr int kMaxPadeDegree = 13;
inline constexpr int kMaxPadeEll = 16;

enum class PadeKind { phi, psi };

/// Diagonal [d/d] rational approximant in the monomial basis (ascending
/// coefficients, both vectors of length d+1).
///
/// kind == phi:  numerator/denominator approximate phi_ell; the value at 0 is
///               numerator[0]/denominator[0] = 1/ell! with denominator[0] = 1.
/// kind == psi:  the phi pair swapped and rescaled by ell!, so the value at 0
///               is ell! and denominator[0] = 1.
struct PadeRational {
  int degree = 0;
  int ell = 0;
  PadeKind kind = PadeKind::phi;
  std::vector<double> numerator;
  std::vector<double> denominator;
};

/// Coefficients of the [d/d] approximant of phi_ell.  All factorial ratios
/// are accumulated multiplicatively; no large factorial is ever formed alone.
PadeRational phi_pade_coeffs(int d, int ell);

/// Coefficients of the [d/d] approximant of psi_ell = 1/phi_ell via the
/// reciprocal covariance property (swap and rescale by ell!).  Production
/// code uses this only for ell = 1; the ell >= 2 swap is kept for tests since
/// its accuracy is limited by the conditioning of the phi numerator.
PadeRational psi_pade_coeffs(int d, int ell);

/// Horner evaluation numerator(z)/denominator(z).
Complex pade_eval_scalar(const PadeRational& r, Complex z);

/// Truncation of the series  phi_ell(z) D_{d,ell}(z) - N_{d,ell}(z)
///   = sum_{i>=2d+1} (-1)^d d!(d+ell)!/((2d+ell)!(ell+i)!) C(i-(d+1), d) z^i
/// with `terms` summands.
Complex residual_series(int d, int ell, Complex z, int terms);

/// Same truncated series with every summand replaced by its absolute value at
/// |z| = R: a computable bound on |phi_ell D - N| over the disc of radius R.
double residual_series_abs_bound(int d, int ell, double R, int terms);

/// s(d, R): the psi_1 Pade defect bound
///   |psi_1(z) D_{d,1}(z) - N_{d,1}(z)| <= s(d, R)  for |z| <= R < 2 pi,
/// built from the scaled Bernoulli coefficients.  The series is truncated
/// once terms fall below 1e-20 of the partial sum five times in a row.
double error_bound_s(int d, double R);

/// Lower bound for |D_{d,1}| on the disc |z| <= R.  Certifies that every
/// root of D_{d,1} (companion-matrix eigenvalues) lies outside the closed
/// disc, then returns the minimum of |D_{d,1}| over 2e5 samples of the
/// boundary circle (the minimum-modulus principle moves the minimum there).
double denom_min_modulus(int d, double R);

/// Bundle of the computable bound pieces: total = series_value/denom_min.
struct ErrorBound {
  int d = 0;
  double radius = 0.0;
  double series_value = 0.0;
  double denom_min = 0.0;
  double total = 0.0;
};
ErrorBound compute_error_bound(int d, double R);

/// All complex roots of a real-coefficient polynomial (ascending
/// coefficients) by the companion-matrix eigenvalue method: the companion is
/// already Hessenberg, and a shifted complex QR iteration deflates its
/// eigenvalues one by one.
std::vector<Complex> polynomial_roots(std::span<const double> coeffs);

}  // namespace psifun
