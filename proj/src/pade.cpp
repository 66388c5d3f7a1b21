#include "psifun/pade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "psifun/errors.hpp"

namespace psifun {

namespace {

void check_range(int d, int ell) {
  if (d < 1 || d > kMaxPadeDegree)
    throw std::invalid_argument("pade: degree out of range 1.." +
                                std::to_string(kMaxPadeDegree));
  if (ell < 0 || ell > kMaxPadeEll)
    throw std::invalid_argument("pade: ell out of range 0.." +
                                std::to_string(kMaxPadeEll));
}

Complex horner(std::span<const double> c, Complex z) {
  Complex r(0.0);
  for (std::size_t k = c.size(); k-- > 0;) r = r * z + c[k];
  return r;
}

}  // namespace

PadeRational phi_pade_coeffs(int d, int ell) {
  check_range(d, ell);
  PadeRational r;
  r.degree = d;
  r.ell = ell;
  r.kind = PadeKind::phi;
  r.denominator.resize(d + 1);
  r.numerator.resize(d + 1);

  // Denominator coefficient ratio:
  //   D_{i+1}/D_i = -(d-i) / ((i+1)(2d+ell-i)),   D_0 = 1.
  r.denominator[0] = 1.0;
  for (int i = 0; i < d; ++i)
    r.denominator[i + 1] =
        r.denominator[i] * (-double(d - i) / ((i + 1.0) * (2 * d + ell - i)));

  // The numerator is the degree-d truncation of phi_ell * D, i.e. the
  // convolution of D with the Taylor coefficients 1/(ell+k)!.
  std::vector<double> invfact(d + 1);  // invfact[k] = 1/(ell+k)!
  invfact[0] = 1.0;
  for (int j = 2; j <= ell; ++j) invfact[0] /= j;
  for (int k = 1; k <= d; ++k) invfact[k] = invfact[k - 1] / (ell + k);
  for (int i = 0; i <= d; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += r.denominator[j] * invfact[i - j];
    r.numerator[i] = acc;
  }
  return r;
}

PadeRational psi_pade_coeffs(int d, int ell) {
  PadeRational phi = phi_pade_coeffs(d, ell);
  PadeRational r;
  r.degree = d;
  r.ell = ell;
  r.kind = PadeKind::psi;
  double lfact = 1.0;
  for (int j = 2; j <= ell; ++j) lfact *= j;
  r.numerator = std::move(phi.denominator);
  r.denominator = std::move(phi.numerator);
  for (double& c : r.numerator) c *= lfact;
  for (double& c : r.denominator) c *= lfact;
  return r;
}

Complex pade_eval_scalar(const PadeRational& r, Complex z) {
  const Complex den = horner(r.denominator, z);
  if (std::abs(den) < 1e4 * std::numeric_limits<double>::min())
    throw PoleError("pade_eval_scalar: denominator vanishes");
  return horner(r.numerator, z) / den;
}

Complex residual_series(int d, int ell, Complex z, int terms) {
  check_range(d, ell);
  if (terms < 1) throw std::invalid_argument("residual_series: terms >= 1");
  // Leading term: (-1)^d d!(d+ell)!/((2d+ell)!(2d+ell+1)!) z^{2d+1}.
  double lead = 1.0;
  for (int j = 1; j <= d; ++j) lead *= double(j) / (d + ell + j);
  for (int k = 1; k <= 2 * d + ell + 1; ++k) lead /= k;
  if (d % 2 != 0) lead = -lead;
  Complex term = lead * std::pow(z, 2 * d + 1);
  Complex sum(0.0);
  int i = 2 * d + 1;
  for (int t = 0; t < terms; ++t) {
    sum += term;
    term *= z * (double(i - d) / (double(i - 2 * d) * double(ell + i + 1)));
    ++i;
  }
  return sum;
}

double residual_series_abs_bound(int d, int ell, double R, int terms) {
  check_range(d, ell);
  double lead = 1.0;
  for (int j = 1; j <= d; ++j) lead *= double(j) / (d + ell + j);
  for (int k = 1; k <= 2 * d + ell + 1; ++k) lead /= k;
  double term = std::abs(lead) * std::pow(R, 2 * d + 1);
  double sum = 0.0;
  int i = 2 * d + 1;
  for (int t = 0; t < terms; ++t) {
    sum += term;
    term *= R * (double(i - d) / (double(i - 2 * d) * double(ell + i + 1)));
    ++i;
  }
  return sum;
}

double error_bound_s(int d, double R) {
  if (d < 1 || d > kMaxPadeDegree)
    throw std::invalid_argument("error_bound_s: degree out of range");
  if (!(R > 0.0) || R >= 2.0 * std::numbers::pi)
    throw std::invalid_argument(
        "error_bound_s: requires 0 < R < 2*pi (the Bernoulli series for psi_1 "
        "diverges beyond)");

  const ScaledBernoulli b = bernoulli_scaled(256);

  // w_k = (d+1)!/(1+k)! C(k-d-1, d), k >= 2d+1, by ratio recurrence.
  // gamma_i = |sum_m b_m w_{i-m}|; terms gamma_i R^i decay like (R/2pi)^i.
  double w0 = 1.0;  // w_{2d+1} = (d+1)!/(2d+2)! = 1/((d+2)...(2d+2))
  for (int j = d + 2; j <= 2 * d + 2; ++j) w0 /= j;
  std::vector<double> w;
  w.push_back(w0);

  double prefactor = 1.0;  // d!/(2d+1)! = 1/((d+1)...(2d+1))
  for (int j = d + 1; j <= 2 * d + 1; ++j) prefactor /= j;

  double sum = 0.0;
  double Rpow = std::pow(R, 2 * d + 1);
  int consecutive_small = 0;
  for (int i = 2 * d + 1; consecutive_small < 5; ++i) {
    const int k_new = i;  // need w up to index i (offset 2d+1)
    while ((int)w.size() <= k_new - (2 * d + 1)) {
      const int k = 2 * d + 1 + (int)w.size() - 1;
      w.push_back(w.back() * (double(k - d) / (double(k + 2) * double(k - 2 * d))));
    }
    double gamma = 0.0;
    for (int m = 0; m <= i - 2 * d - 1; ++m) {
      if (m >= (int)b.size()) break;
      gamma += b[m] * w[i - m - (2 * d + 1)];
    }
    gamma = std::abs(gamma);
    const double term = gamma * Rpow;
    sum += term;
    consecutive_small = (sum > 0.0 && term < 1e-20 * sum) ? consecutive_small + 1 : 0;
    Rpow *= R;
    if (i > 2 * d + 1 + 2000) break;  // unreachable for R < 2*pi
  }
  return prefactor * sum;
}

namespace {

// Eigenvalues of a complex upper Hessenberg matrix by the shifted QR
// iteration with Givens rotations.  Sizes here are <= kMaxPadeDegree, so the
// explicit (non-bulge-chasing) form is plenty.
std::vector<Complex> hessenberg_eigenvalues(std::vector<std::vector<Complex>> H) {
  const int n = (int)H.size();
  std::vector<Complex> eig(n);
  int m = n - 1;
  int stuck = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  while (m >= 0) {
    if (m == 0) {
      eig[0] = H[0][0];
      break;
    }
    // Deflate when the trailing subdiagonal entry is negligible.
    const double sub = std::abs(H[m][m - 1]);
    if (sub <= eps * (std::abs(H[m - 1][m - 1]) + std::abs(H[m][m]) + 1e-300)) {
      eig[m] = H[m][m];
      --m;
      stuck = 0;
      continue;
    }
    if (++stuck > 500)
      throw std::runtime_error("hessenberg_eigenvalues: QR failed to deflate");

    // Wilkinson shift from the trailing 2x2 block.
    const Complex a = H[m - 1][m - 1], bb = H[m - 1][m], c = H[m][m - 1],
                  dd = H[m][m];
    const Complex tr = a + dd, det = a * dd - bb * c;
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex r1 = 0.5 * (tr + disc), r2 = 0.5 * (tr - disc);
    Complex shift = (std::abs(r1 - dd) < std::abs(r2 - dd)) ? r1 : r2;
    // Exceptional shift every 12 stalled sweeps.
    if (stuck % 12 == 0) shift += Complex(std::abs(sub), 0.0);

    // QR factorization of (H - shift I) restricted to the active block,
    // then H <- R Q + shift I.
    for (int i = 0; i <= m; ++i) H[i][i] -= shift;
    std::vector<Complex> cs(m), sn(m);
    for (int k = 0; k < m; ++k) {
      const Complex x = H[k][k], y = H[k + 1][k];
      const double nrm = std::hypot(std::abs(x), std::abs(y));
      if (nrm == 0.0) {
        cs[k] = 1.0;
        sn[k] = 0.0;
        continue;
      }
      cs[k] = x / nrm;
      sn[k] = y / nrm;
      for (int j = k; j <= m; ++j) {
        const Complex t1 = H[k][j], t2 = H[k + 1][j];
        H[k][j] = std::conj(cs[k]) * t1 + std::conj(sn[k]) * t2;
        H[k + 1][j] = -sn[k] * t1 + cs[k] * t2;
      }
    }
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i <= std::min(k + 1, m); ++i) {
        const Complex t1 = H[i][k], t2 = H[i][k + 1];
        H[i][k] = t1 * cs[k] + t2 * sn[k];
        H[i][k + 1] = -t1 * std::conj(sn[k]) + t2 * std::conj(cs[k]);
      }
    }
    for (int i = 0; i <= m; ++i) H[i][i] += shift;
  }
  return eig;
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const double> coeffs) {
  // Strip trailing (leading-degree) zeros.
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg <= 1)
    throw std::invalid_argument("polynomial_roots: degree must be >= 1");
  const int n = (int)deg - 1;
  const double lead = coeffs[n];
  std::vector<std::vector<Complex>> C(n, std::vector<Complex>(n, Complex(0.0)));
  for (int i = 1; i < n; ++i) C[i][i - 1] = 1.0;
  for (int i = 0; i < n; ++i) C[i][n - 1] = -coeffs[i] / lead;
  return hessenberg_eigenvalues(std::move(C));
}

double denom_min_modulus(int d, double R) {
  if (d < 1 || d > kMaxPadeDegree)
    throw std::invalid_argument("denom_min_modulus: degree out of range");
  if (!(R > 0.0)) throw std::invalid_argument("denom_min_modulus: R > 0");
  const PadeRational psi1 = psi_pade_coeffs(d, 1);
  const std::vector<double>& den = psi1.denominator;

  for (const Complex& root : polynomial_roots(den)) {
    if (std::abs(root) <= R)
      throw std::invalid_argument(
          "denom_min_modulus: D_{d,1} has a root inside the disc |z| <= " +
          std::to_string(R));
  }

  // No interior roots, so by the minimum-modulus principle the minimum over
  // the closed disc is attained on the boundary circle.
  constexpr int kSamples = 200000;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSamples; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kSamples;
    const Complex z = R * Complex(std::cos(th), std::sin(th));
    best = std::min(best, std::abs(horner(den, z)));
  }
  return best;
}

ErrorBound compute_error_bound(int d, double R) {
  ErrorBound b;
  b.d = d;
  b.radius = R;
  b.series_value = error_bound_s(d, R);
  b.denom_min = denom_min_modulus(d, R);
  b.total = b.series_value / b.denom_min;
  return b;
}

}  // namespace psifun
