#pragma once

#include <complex>
#include <vector>

namespace psifun {

using Complex = std::complex<double>;

/// Largest order accepted by the scalar evaluators.
inline constexpr int kMaxPhiOrder = 64;

/// phi_ell(z): phi_0(z) = e^z, phi_ell(z) = (e^z - sum_{j<ell} z^j/j!) / z^ell.
/// Small arguments go through the Taylor series sum_k z^k/(ell+k)!, large ones
/// through the closed form; the switch radius is |z| = 1/2 (the closed form
/// loses digits to cancellation near the origin).
Complex phi_scalar(int ell, Complex z);

/// Taylor branch of phi_ell, compensated (Kahan) summation, terminating once
/// terms stop contributing or after max_terms summands.  Exposed so tests can
/// compare the two branches on overlapping domains.
Complex phi_taylor(int ell, Complex z, int max_terms = 32);

/// Closed-form branch (e^z - partial sum)/z^ell; requires z != 0 for ell >= 1.
Complex phi_closed_form(int ell, Complex z);

/// psi_ell(z) = 1/phi_ell(z).  Throws PoleError when phi_ell(z) vanishes to
/// working precision (its zeros all lie in the open right half-plane).
Complex psi_scalar(int ell, Complex z);

/// Scaled Bernoulli coefficients b_m = B_m/m!, the Taylor coefficients of
/// psi_1 (valid for |z| < 2*pi).  Stored pre-divided by m!: the raw Bernoulli
/// numbers overflow near m = 260 while b_m decay like (2*pi)^-m.
struct ScaledBernoulli {
  std::vector<double> coefficients;  // b_0 .. b_m_max
  double operator[](std::size_t m) const { return coefficients[m]; }
  std::size_t size() const { return coefficients.size(); }
};

/// b_0..b_{m_max} from the convolution recurrence
/// sum_{j=0}^{m} b_j/(m-j+1)! = 0, m >= 1, with b_0 = 1.
ScaledBernoulli bernoulli_scaled(int m_max);

/// |C_ell(z)| = |1 - phi_ell(2z)/phi_ell(z)|, the contraction factor of one
/// Newton-Schulz squaring step on an eigenvalue z.
double conv_ratio(int ell, Complex z);

/// h_ell(t) = |C_ell(it)| - 2 |C_ell(-t)| for t >= 0; nonpositive in exact
/// arithmetic for ell >= 2.
double h_ell(int ell, double t);

}  // namespace psifun
