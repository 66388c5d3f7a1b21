#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace psifun {

/// Dense real matrix, row-major.  All function-evaluation entry points
/// require a square argument; general shapes are allowed for the kernels.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return a_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  double* row(std::size_t i) { return a_.data() + i * cols_; }
  const double* row(std::size_t i) const { return a_.data() + i * cols_; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Number of worker threads the dense kernels may use.  Reads PSIFUN_THREADS
/// once; results are bitwise identical for any positive value.
int kernel_threads();

/// C = A * B.  Fixed per-entry summation order (ascending k), so the result
/// does not depend on the thread count.
void matmul_into(Matrix& C, const Matrix& A, const Matrix& B);
Matrix matmul(const Matrix& A, const Matrix& B);

/// Maximum absolute row sum.
double inf_norm(const Matrix& A);

/// inf_norm(A - B) without forming the difference.
double inf_norm_diff(const Matrix& A, const Matrix& B);

/// Solves M X = B by row-pivoted LU.  Throws SingularMatrixError when a
/// pivot falls below n*eps*||M||_inf.
Matrix solve(Matrix M, Matrix B);

/// Horner evaluation c0 I + c1 A + ... + cd A^d (d matrix products).
Matrix polyval_matrix(std::span<const double> coeffs, const Matrix& A);

// Elementwise helpers used throughout the pipeline.
Matrix operator+(const Matrix& A, const Matrix& B);
Matrix operator-(const Matrix& A, const Matrix& B);
Matrix operator*(double s, const Matrix& A);
void scale_inplace(Matrix& A, double s);
void axpy(double alpha, const Matrix& X, Matrix& Y);  // Y += alpha X
void add_scaled_identity(Matrix& A, double s);        // A += s I

}  // namespace psifun
