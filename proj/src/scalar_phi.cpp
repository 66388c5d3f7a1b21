#include "psifun/scalar_phi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "psifun/errors.hpp"

namespace psifun {

namespace {

void check_order(int ell) {
  if (ell < 0 || ell > kMaxPhiOrder)
    throw std::invalid_argument("phi/psi order out of range 0.." +
                                std::to_string(kMaxPhiOrder) + ": " +
                                std::to_string(ell));
}

void check_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("non-finite scalar argument");
}

// Double-double helpers for the Taylor branch.  The series is alternating
// for Re z < 0 and its partial sums can exceed the limit by several orders,
// so compensated accumulation alone is not enough: the term recurrence
// itself must carry extra digits or the amplified term roundoff caps the
// branch at ~1e-10 relative accuracy near |z| = 6.
namespace dd {

struct Double2 {
  double hi = 0.0, lo = 0.0;
};

inline Double2 two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Double2 two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Double2 add(Double2 x, Double2 y) {
  Double2 s = two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  return two_sum(s.hi, s.lo);
}

inline Double2 mul(Double2 x, Double2 y) {
  Double2 p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return two_sum(p.hi, p.lo);
}

inline Double2 div(double a, double b) {
  const double q1 = a / b;
  const double r = std::fma(-q1, b, a);
  return two_sum(q1, r / b);
}

struct Complex2 {
  Double2 re, im;
};

inline Complex2 add(Complex2 x, Complex2 y) {
  return {add(x.re, y.re), add(x.im, y.im)};
}

inline Complex2 mul(Complex2 x, Complex2 y) {
  const Double2 ac = mul(x.re, y.re), bd = mul(x.im, y.im);
  const Double2 ad = mul(x.re, y.im), bc = mul(x.im, y.re);
  return {add(ac, {-bd.hi, -bd.lo}), add(ad, bc)};
}

inline double abs_estimate(Complex2 x) { return std::hypot(x.re.hi, x.im.hi); }

}  // namespace dd

}  // namespace

Complex phi_taylor(int ell, Complex z, int max_terms) {
  check_order(ell);
  check_finite(z);
  // term_0 = 1/ell!, term_k = term_{k-1} * z/(ell+k).
  double c0 = 1.0;
  for (int j = 2; j <= ell; ++j) c0 /= j;
  dd::Complex2 term{{c0, 0.0}, {0.0, 0.0}};
  dd::Complex2 sum = term;
  for (int k = 1; k < max_terms; ++k) {
    const dd::Complex2 w{dd::div(z.real(), double(ell + k)),
                         dd::div(z.imag(), double(ell + k))};
    term = dd::mul(term, w);
    sum = dd::add(sum, term);
    if (dd::abs_estimate(term) <= dd::abs_estimate(sum) * 1e-34) break;
  }
  return {sum.re.hi + sum.re.lo, sum.im.hi + sum.im.lo};
}

Complex phi_closed_form(int ell, Complex z) {
  check_order(ell);
  check_finite(z);
  if (ell == 0) return std::exp(z);
  if (z == Complex(0.0))
    throw std::invalid_argument("phi_closed_form: z = 0 requires ell = 0");
  // (e^z - sum_{j<ell} z^j/j!)/z^ell, with both pieces carried pre-divided by
  // z^ell so that huge |z| with large ell cannot overflow the intermediate
  // power.  The polynomial part sums t_j = z^{j-ell}/j! downward from
  // j = ell-1; the exponential part is exp(z - ell log z).
  Complex t = 1.0 / z;
  for (int j = 2; j < ell; ++j) t /= double(j);  // t = z^{-1}/(ell-1)!
  Complex poly = 0.0;
  for (int j = ell - 1; j >= 0; --j) {
    poly += t;
    t *= double(j) / z;
  }
  const Complex expo = std::exp(z - double(ell) * std::log(z));
  return expo - poly;
}

Complex phi_scalar(int ell, Complex z) {
  check_order(ell);
  check_finite(z);
  // The switch radius grows with ell: below ell/2 the Taylor terms decay
  // from the first summand while the closed form subtracts e^z from a
  // partial sum that agrees with it to ~|z|^ell/ell!, which is fatal once
  // ell outruns |z|.
  const double radius = std::max(0.5, 0.5 * ell);
  if (std::abs(z) <= radius) return phi_taylor(ell, z, 32 + 6 * ell);
  return phi_closed_form(ell, z);
}

Complex psi_scalar(int ell, Complex z) {
  const Complex p = phi_scalar(ell, z);
  if (std::abs(p) < 1e4 * std::numeric_limits<double>::min())
    throw PoleError("psi_scalar: phi_" + std::to_string(ell) +
                    " vanishes at the given argument");
  return 1.0 / p;
}

ScaledBernoulli bernoulli_scaled(int m_max) {
  if (m_max < 0 || m_max > 256)
    throw std::invalid_argument("bernoulli_scaled: m_max out of range 0..256");
  ScaledBernoulli b;
  b.coefficients.resize(m_max + 1);
  b.coefficients[0] = 1.0;
  // Inverse factorials 1/2!..1/(m_max+1)! built multiplicatively.
  std::vector<double> invfact(m_max + 2);
  invfact[0] = 1.0;
  for (int k = 1; k <= m_max + 1; ++k) invfact[k] = invfact[k - 1] / k;
  for (int m = 1; m <= m_max; ++m) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += b.coefficients[j] * invfact[m - j + 1];
    b.coefficients[m] = -s;
  }
  return b;
}

double conv_ratio(int ell, Complex z) {
  if (ell < 1 || ell > kMaxPhiOrder)
    throw std::invalid_argument("conv_ratio: ell out of range 1.." +
                                std::to_string(kMaxPhiOrder));
  const Complex denom = phi_scalar(ell, z);
  if (std::abs(denom) < 1e4 * std::numeric_limits<double>::min())
    throw PoleError("conv_ratio: phi_" + std::to_string(ell) +
                    " vanishes at the given argument");
  return std::abs(1.0 - phi_scalar(ell, 2.0 * z) / denom);
}

double h_ell(int ell, double t) {
  if (ell < 2) throw std::invalid_argument("h_ell: requires ell >= 2");
  if (!(t >= 0.0)) throw std::invalid_argument("h_ell: requires t >= 0");
  return conv_ratio(ell, Complex(0.0, t)) - 2.0 * conv_ratio(ell, Complex(-t, 0.0));
}

}  // namespace psifun
