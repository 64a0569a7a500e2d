#include "isokin/geometry.hpp"

#include <algorithm>
#include <string>

#include "isokin/error.hpp"

namespace isokin {

Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Mat2 rotation_matrix(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat2 r;
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  return r;
}

std::array<double, 2> symmetric_eigenvalues(const Mat2& m) {
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const double radius = std::hypot(half_diff, 0.5 * (m(0, 1) + m(1, 0)));
  return {mean - radius, mean + radius};
}

std::string_view to_string(Unit unit) {
  return unit == Unit::dimensionless ? "dimensionless" : "length";
}

Unit parse_unit(std::string_view text) {
  if (text == "dimensionless") return Unit::dimensionless;
  if (text == "length") return Unit::length;
  throw Error(ErrorCode::InvalidArgument, "unknown unit '" + std::string(text) + "'");
}

PointSet::PointSet(std::vector<Vec2> points, Unit unit) : points_(std::move(points)), unit_(unit) {
  if (points_.empty()) throw Error(ErrorCode::EmptySet, "point set has no points");
  for (const Vec2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorCode::NonFinite, "point coordinates must be finite");
  }
}

namespace {

void require_nonempty(std::span<const Vec2> points) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "point set has no points");
}

}  // namespace

Vec2 centroid(std::span<const Vec2> points) {
  require_nonempty(points);
  Vec2 sum;
  for (const Vec2& p : points) sum = sum + p;
  return (1.0 / static_cast<double>(points.size())) * sum;
}

Mat2 second_moment(std::span<const Vec2> points) {
  const Vec2 c = centroid(points);
  Mat2 m;
  for (const Vec2& p : points) {
    const Vec2 d = p - c;
    m = m + outer(d, d);
  }
  return m;
}

double d_rms(std::span<const Vec2> points) {
  const Vec2 c = centroid(points);
  double sum = 0.0;
  for (const Vec2& p : points) {
    const Vec2 d = p - c;
    sum += dot(d, d);
  }
  return std::sqrt(sum / static_cast<double>(points.size()));
}

Mat3 second_moment_embedded(std::span<const Vec2> points) {
  const Vec2 c = centroid(points);
  Mat3 m;
  for (const Vec2& p : points) {
    const Vec3 d = embed(p - c);
    m = m + outer(d, d);
  }
  return m;
}

Mat3 cross_product_matrix(Vec3 v) {
  Mat3 p;
  p(0, 1) = -v.z;
  p(0, 2) = v.y;
  p(1, 0) = v.z;
  p(1, 2) = -v.x;
  p(2, 0) = -v.y;
  p(2, 1) = v.x;
  return p;
}

Mat3 geometric_inertia(std::span<const Vec2> points) {
  const Vec2 c = centroid(points);
  Mat3 inertia;
  for (const Vec2& p : points) {
    const Vec3 d = embed(p - c);
    const double sq = d.x * d.x + d.y * d.y + d.z * d.z;
    inertia = inertia + (sq * Mat3::identity() - outer(d, d));
  }
  return inertia;
}

Mat3 geometric_inertia_from_moment(std::span<const Vec2> points) {
  const Mat3 m = second_moment_embedded(points);
  return m.trace() * Mat3::identity() - m;
}

Mat3 geometric_inertia_from_cpm(std::span<const Vec2> points) {
  const Vec2 c = centroid(points);
  Mat3 sum;
  for (const Vec2& p : points) {
    const Mat3 pk = cross_product_matrix(embed(p - c));
    sum = sum + pk * pk;
  }
  return -1.0 * sum;
}

}  // namespace isokin
