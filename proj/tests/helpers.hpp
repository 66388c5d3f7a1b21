#pragma once

#include <complex>
#include <random>

#include "psifun/matrix.hpp"

namespace psifun::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix random_matrix(std::size_t rows, std::size_t cols,
                            std::mt19937_64& gen, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Matrix A(rows, cols);
  for (std::size_t i = 0; i < A.size(); ++i) A.data()[i] = dist(gen);
  return A;
}

/// Random matrix with spectrum forced into the open left half-plane by a
/// diagonal shift past the Gershgorin radius, then rescaled to target_norm.
inline Matrix random_stable(std::size_t n, std::mt19937_64& gen,
                            double target_norm) {
  Matrix A = random_matrix(n, n, gen);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += std::abs(A(i, j));
    worst = std::max(worst, s + std::max(0.0, A(i, i)));
  }
  const double shift = worst + 0.1;
  for (std::size_t i = 0; i < n; ++i) A(i, i) -= shift;
  scale_inplace(A, target_norm / inf_norm(A));
  return A;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

}  // namespace psifun::testing
