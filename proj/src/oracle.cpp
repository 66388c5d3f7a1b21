#include "psifun/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace psifun {

namespace {

constexpr int kTaylorTerms = 30;
constexpr double kSeedNorm = 1.0 / 16.0;

// One doubling of (phi_0..phi_ell)(z) -> (phi_0..phi_ell)(2z).  Kept local:
// the oracle shares only the dense kernels with the production pipeline.
std::vector<Matrix> doubled(const std::vector<Matrix>& level) {
  const int ell_max = (int)level.size() - 1;
  std::vector<Matrix> out(level.size());
  for (int l = 0; l <= ell_max; ++l) {
    matmul_into(out[l], level[0], level[l]);
    if (l == 0) continue;
    double invfact = 1.0;
    for (int j = l; j >= 1; --j) {
      axpy(invfact, level[j], out[l]);
      invfact /= double(l - j + 1);
    }
    scale_inplace(out[l], std::exp2(-l));
  }
  return out;
}

std::vector<Matrix> phi_oracle_family(const Matrix& A, int ell) {
  if (!A.square()) throw std::invalid_argument("phi_oracle: A must be square");
  if (ell < 0 || ell > 64)
    throw std::invalid_argument("phi_oracle: ell out of range 0..64");
  const std::size_t n = A.rows();

  int t = 0;
  const double norm = inf_norm(A);
  while (norm > kSeedNorm * std::exp2(t)) ++t;
  const Matrix B = std::exp2(-t) * A;

  // Powers B^k once; each phi_j is a compensated sum of B^k/(j+k)!.
  std::vector<Matrix> level(ell + 1);
  std::vector<Matrix> comp(ell + 1, Matrix(n, n));
  std::vector<double> coeff(ell + 1);  // running 1/(j+k)!
  for (int j = 0; j <= ell; ++j) {
    level[j] = Matrix(n, n);
    double c = 1.0;
    for (int i = 2; i <= j; ++i) c /= i;
    coeff[j] = c;
    add_scaled_identity(level[j], c);  // k = 0 term
  }
  Matrix power = B, next;
  for (int k = 1; k < kTaylorTerms; ++k) {
    if (k > 1) {
      matmul_into(next, power, B);
      std::swap(power, next);
    }
    for (int j = 0; j <= ell; ++j) {
      coeff[j] /= double(j + k);
      // Kahan: add coeff[j]*power into level[j] with carry comp[j].
      double* s = level[j].data();
      double* c2 = comp[j].data();
      const double* p = power.data();
      const double a = coeff[j];
      for (std::size_t q = 0; q < level[j].size(); ++q) {
        const double y = a * p[q] - c2[q];
        const double tq = s[q] + y;
        c2[q] = (tq - s[q]) - y;
        s[q] = tq;
      }
    }
  }
  for (int i = 0; i < t; ++i) level = doubled(level);
  return level;
}

}  // namespace

Matrix phi_oracle(const Matrix& A, int ell) {
  return phi_oracle_family(A, ell).back();
}

Matrix psi_oracle(const Matrix& A, int ell) {
  return solve(phi_oracle(A, ell), Matrix::identity(A.rows()));
}

}  // namespace psifun
