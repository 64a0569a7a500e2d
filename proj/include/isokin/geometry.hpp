#pragma once

// Planar and embedded-3D primitives plus the moment quantities of a planar
// point set about its centroid: centroid, second moment, rms distance,
// geometric moment of inertia, and cross-product matrices.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace isokin {

inline constexpr double kDefaultTolerance = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the embedded cross product a x b.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
Vec2 rotate(Vec2 v, double angle);

/// E*v: counterclockwise rotation by 90 degrees.
constexpr Vec2 rotate90(Vec2 v) { return {-v.y, v.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr Vec3 embed(Vec2 v) { return {v.x, v.y, 0.0}; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Fixed-size row-major square matrix.
template <std::size_t N>
struct SquareMatrix {
  std::array<double, N * N> a{};

  static constexpr std::size_t size() { return N; }

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr SquareMatrix diagonal(const std::array<double, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr double& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

  constexpr double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  constexpr SquareMatrix transposed() const {
    SquareMatrix t;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }

  friend constexpr SquareMatrix operator+(SquareMatrix x, const SquareMatrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a[i] += y.a[i];
    return x;
  }
  friend constexpr SquareMatrix operator-(SquareMatrix x, const SquareMatrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend constexpr SquareMatrix operator*(double s, SquareMatrix x) {
    for (double& v : x.a) v *= s;
    return x;
  }
  friend constexpr SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix p;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t c = 0; c < N; ++c) p(r, c) += x(r, k) * y(k, c);
    return p;
  }
  friend constexpr bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using Mat2 = SquareMatrix<2>;
using Mat3 = SquareMatrix<3>;

constexpr Mat2 outer(Vec2 a, Vec2 b) {
  Mat2 m;
  m(0, 0) = a.x * b.x;
  m(0, 1) = a.x * b.y;
  m(1, 0) = a.y * b.x;
  m(1, 1) = a.y * b.y;
  return m;
}

constexpr Mat3 outer(Vec3 a, Vec3 b) {
  const std::array<double, 3> u{a.x, a.y, a.z};
  const std::array<double, 3> v{b.x, b.y, b.z};
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = u[r] * v[c];
  return m;
}

constexpr Vec3 operator*(const Mat3& m, Vec3 v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

/// Rotation matrix R(angle) acting on column vectors.
Mat2 rotation_matrix(double angle);

/// Eigenvalues of a symmetric 2x2 matrix in ascending order.
std::array<double, 2> symmetric_eigenvalues(const Mat2& m);

enum class Unit { dimensionless, length };

std::string_view to_string(Unit unit);
Unit parse_unit(std::string_view text);

/// An ordered, non-empty list of finite planar points sharing one unit tag.
class PointSet {
 public:
  explicit PointSet(std::vector<Vec2> points, Unit unit = Unit::length);
  PointSet(std::initializer_list<Vec2> points, Unit unit = Unit::length)
      : PointSet(std::vector<Vec2>(points), unit) {}

  std::span<const Vec2> points() const { return points_; }
  const Vec2& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  Unit unit() const { return unit_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Returns a copy with every point mapped through fn, keeping the unit.
  template <typename Fn>
  PointSet transformed(Fn&& fn) const {
    std::vector<Vec2> out;
    out.reserve(points_.size());
    for (const Vec2& p : points_) out.push_back(fn(p));
    return PointSet(std::move(out), unit_);
  }

 private:
  std::vector<Vec2> points_;
  Unit unit_;
};

Vec2 centroid(std::span<const Vec2> points);
Mat2 second_moment(std::span<const Vec2> points);
double d_rms(std::span<const Vec2> points);

inline Vec2 centroid(const PointSet& s) { return centroid(s.points()); }
inline Mat2 second_moment(const PointSet& s) { return second_moment(s.points()); }
inline double d_rms(const PointSet& s) { return d_rms(s.points()); }

/// Second moment of the points embedded as (x, y, 0).
Mat3 second_moment_embedded(std::span<const Vec2> points);

/// P with P*w = v x w.
Mat3 cross_product_matrix(Vec3 v);

/// Sum of |p - c|^2 * 1 - (p - c)(p - c)^T over the embedded points.
Mat3 geometric_inertia(std::span<const Vec2> points);
inline Mat3 geometric_inertia(const PointSet& s) { return geometric_inertia(s.points()); }

/// tr(M3) * 1 - M3 with M3 the embedded second moment.
Mat3 geometric_inertia_from_moment(std::span<const Vec2> points);

/// -sum P_k^2 with P_k the cross-product matrix of p_k - c.
Mat3 geometric_inertia_from_cpm(std::span<const Vec2> points);

}  // namespace isokin
