#pragma once

// Jacobian of a planar n-revolute manipulator, the isotropic model matrix,
// the 1/n-normalized Frobenius norm and distance, and condition numbers.

#include <string>
#include <vector>

#include "isokin/chains.hpp"
#include "isokin/geometry.hpp"
#include "isokin/matrix.hpp"

namespace isokin {

/// 3 x n matrix whose first row maps joint rates to angular velocity
/// (block A) and whose last two rows map them to operation-point velocity
/// (block B). Block B carries length units until the matrix is normalized.
struct JacobianMatrix {
  Matrix entries;
  bool unit_homogeneous = false;

  std::size_t cols() const { return entries.cols(); }
  Matrix block_a() const;
  Matrix block_b() const;
};

/// Column i is (1, E r_i).
JacobianMatrix build_jacobian(const ChainConfiguration& config);

/// Divides rows 2 and 3 by length.
JacobianMatrix normalize_jacobian(const JacobianMatrix& jacobian, double length);

/// Which of the three model-set conditions a point set satisfies.
struct ModelSetCheck {
  bool centered = false;   // sum k_i = 0
  bool isotropic = false;  // second moment is a multiple of the identity
  bool scaled = false;     // sum k_i k_i^T = n 1
  bool dimensionless = false;

  bool ok() const { return centered && isotropic && scaled && dimensionless; }
  std::string describe_failures() const;
};

ModelSetCheck check_model_set(const PointSet& set, double tol = kDefaultTolerance);

/// Dimensionless 3 x n model matrix with columns (1, E k_i).
class ModelMatrix {
 public:
  /// Builds K without validating the source set; for diagnostics against
  /// non-isotropic targets.
  static ModelMatrix unchecked(const PointSet& source);

  const Matrix& entries() const { return entries_; }
  const PointSet& source_set() const { return source_; }
  std::size_t cols() const { return entries_.cols(); }
  Vec2 k(std::size_t i) const { return source_[i]; }

  /// Same model with columns taken in the given order.
  ModelMatrix permuted(const Ordering& ordering) const;

 private:
  explicit ModelMatrix(const PointSet& source);

  PointSet source_;
  Matrix entries_;
};

/// Validated model matrix; throws NotAModelSet naming the failed conditions.
ModelMatrix model_matrix(const PointSet& source, double tol = kDefaultTolerance);

/// sqrt(tr(M M^T) / n), n the column count.
double frobenius_norm(const Matrix& m);

/// Normalized Frobenius norm of a - b.
double distance(const Matrix& a, const Matrix& b);

struct MatrixIsotropy {
  bool isotropic = false;
  double sigma = 0.0;
};

/// C C^T = sigma^2 1 with sigma > 0, within tol relative to max(1, sigma^2).
MatrixIsotropy is_isotropic_matrix(const Matrix& c, double tol = kDefaultTolerance);

/// C^T (C C^T)^-1, which for isotropic C equals C^T / sigma^2.
Matrix generalized_inverse_isotropic(const Matrix& c, double tol = kDefaultTolerance);

/// |A| |A^-1| with the normalized Frobenius norm.
double condition_number_frobenius(const Matrix& a);

/// Singular values of an m x n matrix with m <= n, descending.
std::vector<double> singular_values(const Matrix& a);

/// sigma_max / sigma_min for full-row-rank m x n matrices with m <= n.
double condition_number_spectral(const Matrix& a);

}  // namespace isokin
