#include "psifun/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "psifun/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psifun {

int kernel_threads() {
  static const int n = [] {
#ifdef _OPENMP
    if (const char* env = std::getenv("PSIFUN_THREADS")) {
      const int k = std::atoi(env);
      if (k > 0) return k;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return n;
}

void matmul_into(Matrix& C, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows())
    throw std::invalid_argument("matmul: inner dimensions disagree");
  const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
  if (C.rows() != m || C.cols() != n) C = Matrix(m, n);
  if (&C == &A || &C == &B)
    throw std::invalid_argument("matmul_into: C must not alias an input");

  // Tiled over (j, k) so the active B panel stays cache-resident at large
  // sizes.  Every C entry still accumulates its products in ascending k with
  // one fused update each, so the result is independent of the tiling and of
  // the worker count (rows are distributed statically).
  constexpr std::size_t kKC = 320, kJC = 720;
  const bool par = m * k * n >= (std::size_t)1 << 18;
  (void)par;
#pragma omp parallel for schedule(static) num_threads(kernel_threads()) if (par)
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)m; ++i)
    std::fill(C.row(i), C.row(i) + n, 0.0);

  for (std::size_t jb = 0; jb < n; jb += kJC) {
    const std::size_t je = std::min(jb + kJC, n);
    for (std::size_t kb = 0; kb < k; kb += kKC) {
      const std::size_t ke = std::min(kb + kKC, k);
#pragma omp parallel for schedule(static) num_threads(kernel_threads()) if (par)
      for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)m; ++i) {
        double* ci = C.row(i);
        const double* ai = A.row(i);
        std::size_t p = kb;
        for (; p + 8 <= ke; p += 8) {
          const double a0 = ai[p], a1 = ai[p + 1], a2 = ai[p + 2],
                       a3 = ai[p + 3], a4 = ai[p + 4], a5 = ai[p + 5],
                       a6 = ai[p + 6], a7 = ai[p + 7];
          const double* b0 = B.row(p);
          for (std::size_t j = jb; j < je; ++j) {
            double cv = ci[j];
            cv += a0 * b0[j];
            cv += a1 * b0[n + j];
            cv += a2 * b0[2 * n + j];
            cv += a3 * b0[3 * n + j];
            cv += a4 * b0[4 * n + j];
            cv += a5 * b0[5 * n + j];
            cv += a6 * b0[6 * n + j];
            cv += a7 * b0[7 * n + j];
            ci[j] = cv;
          }
        }
        for (; p < ke; ++p) {
          const double a = ai[p];
          const double* bp = B.row(p);
          for (std::size_t j = jb; j < je; ++j) ci[j] += a * bp[j];
        }
      }
    }
  }
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  Matrix C;
  matmul_into(C, A, B);
  return C;
}

double inf_norm(const Matrix& A) {
  double best = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double* ai = A.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) s += std::abs(ai[j]);
    best = std::max(best, s);
  }
  return best;
}

double inf_norm_diff(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("inf_norm_diff: shape mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double* ai = A.row(i);
    const double* bi = B.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) s += std::abs(ai[j] - bi[j]);
    best = std::max(best, s);
  }
  return best;
}

Matrix solve(Matrix M, Matrix B) {
  if (!M.square()) throw std::invalid_argument("solve: matrix must be square");
  if (M.rows() != B.rows())
    throw std::invalid_argument("solve: right-hand side rows disagree");
  const std::size_t n = M.rows(), nrhs = B.cols();
  const double tiny =
      inf_norm(M) * double(n) * std::numeric_limits<double>::epsilon();

  std::vector<std::size_t> piv(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    double best = std::abs(M(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const double v = std::abs(M(i, col));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= tiny)
      throw SingularMatrixError("solve: pivot " + std::to_string(col) +
                                " is singular to working precision");
    piv[col] = p;
    if (p != col) {
      std::swap_ranges(M.row(col), M.row(col) + n, M.row(p));
      std::swap_ranges(B.row(col), B.row(col) + nrhs, B.row(p));
    }
    const double inv = 1.0 / M(col, col);
    const double* mrow = M.row(col);
    const bool par = (n - col) * n >= (std::size_t)1 << 16;
    (void)par;
#pragma omp parallel for schedule(static) num_threads(kernel_threads()) if (par)
    for (std::ptrdiff_t i = (std::ptrdiff_t)col + 1; i < (std::ptrdiff_t)n;
         ++i) {
      double* mi = M.row(i);
      const double l = mi[col] * inv;
      mi[col] = l;
      for (std::size_t j = col + 1; j < n; ++j) mi[j] -= l * mrow[j];
      double* bi = B.row(i);
      const double* bcol = B.row(col);
      for (std::size_t j = 0; j < nrhs; ++j) bi[j] -= l * bcol[j];
    }
  }

  // Back substitution, U X = Y.
  for (std::size_t ii = n; ii-- > 0;) {
    double* bi = B.row(ii);
    const double inv = 1.0 / M(ii, ii);
    for (std::size_t j = 0; j < nrhs; ++j) bi[j] *= inv;
    const bool par = ii * nrhs >= (std::size_t)1 << 16;
    (void)par;
#pragma omp parallel for schedule(static) num_threads(kernel_threads()) if (par)
    for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)ii; ++i) {
      const double u = M(i, ii);
      double* br = B.row(i);
      for (std::size_t j = 0; j < nrhs; ++j) br[j] -= u * bi[j];
    }
  }
  return B;
}

Matrix polyval_matrix(std::span<const double> coeffs, const Matrix& A) {
  if (!A.square())
    throw std::invalid_argument("polyval_matrix: matrix must be square");
  if (coeffs.empty())
    throw std::invalid_argument("polyval_matrix: empty coefficient vector");
  const std::size_t n = A.rows();
  Matrix X(n, n);
  add_scaled_identity(X, coeffs.back());
  Matrix tmp;
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    matmul_into(tmp, X, A);
    std::swap(X, tmp);
    add_scaled_identity(X, coeffs[k]);
  }
  return X;
}

Matrix operator+(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("operator+: shape mismatch");
  Matrix C = A;
  for (std::size_t i = 0; i < C.size(); ++i) C.data()[i] += B.data()[i];
  return C;
}

Matrix operator-(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("operator-: shape mismatch");
  Matrix C = A;
  for (std::size_t i = 0; i < C.size(); ++i) C.data()[i] -= B.data()[i];
  return C;
}

Matrix operator*(double s, const Matrix& A) {
  Matrix C = A;
  scale_inplace(C, s);
  return C;
}

void scale_inplace(Matrix& A, double s) {
  for (std::size_t i = 0; i < A.size(); ++i) A.data()[i] *= s;
}

void axpy(double alpha, const Matrix& X, Matrix& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols())
    throw std::invalid_argument("axpy: shape mismatch");
  for (std::size_t i = 0; i < X.size(); ++i) Y.data()[i] += alpha * X.data()[i];
}

void add_scaled_identity(Matrix& A, double s) {
  if (!A.square())
    throw std::invalid_argument("add_scaled_identity: matrix must be square");
  for (std::size_t i = 0; i < A.rows(); ++i) A(i, i) += s;
}

}  // namespace psifun
