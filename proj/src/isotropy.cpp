#include "isokin/isotropy.hpp"

#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

#include "isokin/error.hpp"

namespace isokin {

namespace {

IsotropyReport report_for_moment(const Mat2& m, double tol) {
  IsotropyReport report;
  const double trace = m.trace();
  report.sigma_squared = 0.5 * trace;
  const Mat2 diff = m - report.sigma_squared * Mat2::identity();
  double frob = 0.0;
  for (double v : diff.a) frob += v * v;
  report.deviation = std::sqrt(frob) / std::max(trace, 1.0);
  // sigma must be strictly positive: a set collapsed onto its centroid is not isotropic.
  report.is_isotropic = report.deviation <= tol && report.sigma_squared > tol;
  return report;
}

}  // namespace

IsotropyReport check_isotropic_set(const PointSet& set, double tol) {
  return report_for_moment(second_moment(set), tol);
}

IsotropyReport check_isotropic_inertia(const PointSet& set, double tol) {
  // The x-y block of I is B = tr(M) 1 - M, hence tr(B) = tr(M) and M = tr(B) 1 - B.
  const Mat3 inertia = geometric_inertia(set);
  Mat2 block;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) block(r, c) = inertia(r, c);
  return report_for_moment(block.trace() * Mat2::identity() - block, tol);
}

PointSet regular_polygon(std::size_t n, double circumradius, double phase, Vec2 center, Unit unit) {
  if (n < 3)
    throw Error(ErrorCode::DegeneratePolygon, "a regular polygon needs at least 3 vertices, got " + std::to_string(n));
  if (!(circumradius > 0.0) || !std::isfinite(circumradius))
    throw Error(ErrorCode::NonpositiveLength, "circumradius must be positive and finite");
  std::vector<Vec2> points;
  points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    points.push_back(center + circumradius * unit_vector(angle));
  }
  return PointSet(std::move(points), unit);
}

PointSet union_sets(const PointSet& first, const PointSet& second, double tol) {
  if (first.unit() != second.unit())
    throw Error(ErrorCode::UnitMismatch, "cannot join sets with different unit tags");
  const double gap = norm(centroid(first) - centroid(second));
  if (gap > tol)
    throw Error(ErrorCode::CentroidMismatch, "centroids differ by " + std::to_string(gap));
  std::vector<Vec2> points(first.begin(), first.end());
  points.insert(points.end(), second.begin(), second.end());
  return PointSet(std::move(points), first.unit());
}

PointSet rotate_set(const PointSet& set, double angle) {
  const Vec2 c = centroid(set);
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  return set.transformed([&](Vec2 p) {
    const Vec2 d = p - c;
    // Adding the displacement keeps p exactly when the angle is zero.
    return p + (Vec2{cs * d.x - sn * d.y, sn * d.x + cs * d.y} - d);
  });
}

PointSet reflect_set(const PointSet& set, double axis_angle) {
  // Reflection about a line at angle a: [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
  const Vec2 c = centroid(set);
  const double cs = std::cos(2.0 * axis_angle);
  const double sn = std::sin(2.0 * axis_angle);
  return set.transformed([&](Vec2 p) {
    const Vec2 d = p - c;
    return c + Vec2{cs * d.x + sn * d.y, sn * d.x - cs * d.y};
  });
}

PointSet scale_set(const PointSet& set, double factor) {
  const Vec2 c = centroid(set);
  return set.transformed([&](Vec2 p) { return c + factor * (p - c); });
}

}  // namespace isokin
