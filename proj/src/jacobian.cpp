#include "isokin/jacobian.hpp"

#include <algorithm>
#include <cmath>

#include "isokin/error.hpp"
#include "isokin/isotropy.hpp"

namespace isokin {

Matrix JacobianMatrix::block_a() const {
  Matrix a(1, entries.cols());
  for (std::size_t c = 0; c < entries.cols(); ++c) a(0, c) = entries(0, c);
  return a;
}

Matrix JacobianMatrix::block_b() const {
  Matrix b(2, entries.cols());
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < entries.cols(); ++c) b(r, c) = entries(r + 1, c);
  return b;
}

namespace {

Matrix columns_from(std::span<const Vec2> vectors, double scale) {
  Matrix m(3, vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Vec2 e = rotate90(vectors[i]);
    m(0, i) = 1.0;
    m(1, i) = scale * e.x;
    m(2, i) = scale * e.y;
  }
  return m;
}

}  // namespace

JacobianMatrix build_jacobian(const ChainConfiguration& config) {
  return {columns_from(config.r_vectors, 1.0), false};
}

JacobianMatrix normalize_jacobian(const JacobianMatrix& jacobian, double length) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error(ErrorCode::NonpositiveLength, "normalizing length must be positive, got " + std::to_string(length));
  if (jacobian.unit_homogeneous)
    throw Error(ErrorCode::InvalidArgument, "jacobian is already dimensionally homogeneous");
  JacobianMatrix out = jacobian;
  for (std::size_t r = 1; r < 3; ++r)
    for (std::size_t c = 0; c < out.entries.cols(); ++c) out.entries(r, c) /= length;
  out.unit_homogeneous = true;
  return out;
}

std::string ModelSetCheck::describe_failures() const {
  std::string out;
  auto add = [&out](const char* what) {
    if (!out.empty()) out += ", ";
    out += what;
  };
  if (!dimensionless) add("set is not dimensionless");
  if (!centered) add("sum of k_i is not zero");
  if (!isotropic) add("set is not isotropic");
  if (!scaled) add("sum of k_i k_i^T is not n times the identity");
  return out;
}

ModelSetCheck check_model_set(const PointSet& set, double tol) {
  const double n = static_cast<double>(set.size());
  ModelSetCheck check;
  check.dimensionless = set.unit() == Unit::dimensionless;
  Vec2 sum;
  Mat2 moment;
  for (const Vec2& k : set) {
    sum = sum + k;
    moment = moment + outer(k, k);
  }
  check.centered = norm(sum) <= tol * n;
  check.isotropic = check_isotropic_set(set, tol).is_isotropic;
  check.scaled = (moment - n * Mat2::identity()).max_abs() <= tol * n;
  return check;
}

ModelMatrix::ModelMatrix(const PointSet& source) : source_(source), entries_(columns_from(source.points(), 1.0)) {}

ModelMatrix ModelMatrix::unchecked(const PointSet& source) { return ModelMatrix(source); }

ModelMatrix ModelMatrix::permuted(const Ordering& ordering) const {
  if (ordering.size() != source_.size())
    throw Error(ErrorCode::ArityMismatch, "column permutation arity does not match the model");
  std::vector<Vec2> ks;
  ks.reserve(ordering.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) ks.push_back(source_[ordering[i]]);
  return ModelMatrix(PointSet(std::move(ks), source_.unit()));
}

ModelMatrix model_matrix(const PointSet& source, double tol) {
  const ModelSetCheck check = check_model_set(source, tol);
  if (!check.ok()) throw Error(ErrorCode::NotAModelSet, check.describe_failures());
  return ModelMatrix::unchecked(source);
}

double frobenius_norm(const Matrix& m) {
  if (m.cols() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) sum += m(r, c) * m(r, c);
  return std::sqrt(sum / static_cast<double>(m.cols()));
}

double distance(const Matrix& a, const Matrix& b) { return frobenius_norm(a - b); }

MatrixIsotropy is_isotropic_matrix(const Matrix& c, double tol) {
  const std::size_t m = c.rows();
  if (m > c.cols())
    throw Error(ErrorCode::ShapeMismatch, "isotropy needs at least as many columns as rows");
  const Matrix gram = c * c.transposed();
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) trace += gram(i, i);
  const double sigma_sq = m == 0 ? 0.0 : trace / static_cast<double>(m);
  const double deviation = (gram - sigma_sq * Matrix::identity(m)).max_abs();
  MatrixIsotropy out;
  out.isotropic = sigma_sq > tol && deviation <= tol * std::max(1.0, sigma_sq);
  if (out.isotropic) out.sigma = std::sqrt(sigma_sq);
  return out;
}

Matrix generalized_inverse_isotropic(const Matrix& c, double tol) {
  const MatrixIsotropy iso = is_isotropic_matrix(c, tol);
  if (!iso.isotropic) throw Error(ErrorCode::NotIsotropic, "matrix has distinct or vanishing singular values");
  return (1.0 / (iso.sigma * iso.sigma)) * c.transposed();
}

double condition_number_frobenius(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "condition number needs a square matrix");
  return frobenius_norm(a) * frobenius_norm(inverse(a));
}

std::vector<double> singular_values(const Matrix& a) {
  if (a.rows() > a.cols()) throw Error(ErrorCode::ShapeMismatch, "singular values need rows <= cols");
  std::vector<double> eig = symmetric_eigenvalues(a * a.transposed());
  std::vector<double> sv;
  sv.reserve(eig.size());
  for (auto it = eig.rbegin(); it != eig.rend(); ++it) sv.push_back(std::sqrt(std::max(0.0, *it)));
  return sv;
}

double condition_number_spectral(const Matrix& a) {
  if (a.rows() > a.cols()) throw Error(ErrorCode::ShapeMismatch, "singular values need rows <= cols");
  if (a.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "empty matrix");
  // Rank is judged on the eigenvalues of A A^T: their roundoff is O(eps), while
  // taking square roots would inflate it to O(sqrt(eps)).
  const std::vector<double> eig = symmetric_eigenvalues(a * a.transposed());
  const double largest = eig.back();
  const double smallest = eig.front();
  if (!(largest > 0.0) || smallest <= 1e-14 * largest)
    throw Error(ErrorCode::SingularMatrix, "matrix is rank deficient");
  return std::sqrt(largest / smallest);
}

}  // namespace isokin
