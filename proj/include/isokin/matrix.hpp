#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace isokin {

/// Small dense row-major matrix for the 3 x n shapes used by Jacobians.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transposed() const;
  /// Largest absolute entry.
  double max_abs() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, Matrix a);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
std::vector<double> symmetric_eigenvalues(const Matrix& symmetric);

/// Inverse by Gauss-Jordan elimination with partial pivoting. Throws
/// SingularMatrix when a pivot falls below 1e-12 relative to the largest entry.
Matrix inverse(const Matrix& square);

}  // namespace isokin
