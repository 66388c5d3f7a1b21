#include "psifun/phi_ladder.hpp"

#include <cmath>
#include <stdexcept>

#include "psifun/pade.hpp"

namespace psifun {

ScalingDecision scaling_exponent(const Matrix& A, double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("scaling_exponent: theta must be positive");
  ScalingDecision dec;
  dec.theta = theta;
  dec.norm = inf_norm(A);
  int s = 0;
  if (dec.norm > theta) {
    s = (int)std::ceil(std::log2(dec.norm / theta));
    // log2 roundoff can push the ceiling one step either way near exact
    // powers of two; settle it against the defining inequality.
    while (s > 0 && dec.norm <= theta * std::exp2(s - 1)) --s;
    while (dec.norm > theta * std::exp2(s) * (1.0 + 4e-16)) ++s;
  }
  dec.s = s;
  return dec;
}

std::vector<Matrix> phi_seed(const Matrix& B, int ell_max, int d) {
  if (!B.square()) throw std::invalid_argument("phi_seed: B must be square");
  if (ell_max < 0 || ell_max > kMaxPadeEll)
    throw std::invalid_argument("phi_seed: ell_max out of range");
  const std::size_t n = B.rows();

  std::vector<PadeRational> pairs;
  pairs.reserve(ell_max + 1);
  for (int j = 0; j <= ell_max; ++j) pairs.push_back(phi_pade_coeffs(d, j));

  // Accumulate numerators and denominators over one shared running power of
  // B; peak storage stays at 2(ell_max+1)+2 matrices regardless of d.
  std::vector<Matrix> num(ell_max + 1), den(ell_max + 1);
  for (int j = 0; j <= ell_max; ++j) {
    num[j] = Matrix(n, n);
    add_scaled_identity(num[j], pairs[j].numerator[0]);
    den[j] = Matrix(n, n);
    add_scaled_identity(den[j], pairs[j].denominator[0]);
  }
  Matrix power = B, next;
  for (int k = 1; k <= d; ++k) {
    if (k > 1) {
      matmul_into(next, power, B);
      std::swap(power, next);
    }
    for (int j = 0; j <= ell_max; ++j) {
      axpy(pairs[j].numerator[k], power, num[j]);
      axpy(pairs[j].denominator[k], power, den[j]);
    }
  }
  power = Matrix();
  next = Matrix();

  std::vector<Matrix> phis(ell_max + 1);
  for (int j = 0; j <= ell_max; ++j) {
    phis[j] = solve(std::move(den[j]), std::move(num[j]));
    den[j] = Matrix();
  }
  return phis;
}

std::vector<Matrix> square_step(const std::vector<Matrix>& level) {
  if (level.empty()) throw std::invalid_argument("square_step: empty level");
  const int ell_max = (int)level.size() - 1;
  std::vector<Matrix> out(level.size());
  // phi_0(2z) = phi_0(z)^2; higher orders need phi_0 * phi_l plus the
  // lower-order tail, all evaluated from the incoming level.
  for (int l = 0; l <= ell_max; ++l) {
    matmul_into(out[l], level[0], level[l]);
    if (l == 0) continue;
    double invfact = 1.0;  // 1/(l-j)! built down from j=l
    for (int j = l; j >= 1; --j) {
      axpy(invfact, level[j], out[l]);
      invfact /= double(l - j + 1);
    }
    scale_inplace(out[l], std::exp2(-l));
  }
  return out;
}

PhiLadder phi_ladder(const Matrix& A, int ell_max, double theta, int d) {
  if (!A.square()) throw std::invalid_argument("phi_ladder: A must be square");
  PhiLadder ladder;
  ladder.ell_max = ell_max;
  ladder.theta = theta;
  const ScalingDecision dec = scaling_exponent(A, theta);
  ladder.s = dec.s;

  Matrix B = std::exp2(-dec.s) * A;
  ladder.levels.reserve(dec.s + 1);
  ladder.levels.push_back(phi_seed(B, ell_max, d));
  for (int i = dec.s; i >= 1; --i)
    ladder.levels.push_back(square_step(ladder.levels.back()));
  return ladder;
}

}  // namespace psifun
