#pragma once

#include <cstddef>

#include "isokin/geometry.hpp"

namespace isokin {

struct IsotropyReport {
  bool is_isotropic = false;
  /// tr(M)/2, the common eigenvalue of M when the set is isotropic.
  double sigma_squared = 0.0;
  /// |M - (tr(M)/2) 1|_F / max(tr(M), 1).
  double deviation = 0.0;
};

/// Tests whether the second moment about the centroid is a positive multiple
/// of the 2x2 identity.
IsotropyReport check_isotropic_set(const PointSet& set, double tol = kDefaultTolerance);

/// Same verdict computed from the x-y block of the geometric moment of inertia.
IsotropyReport check_isotropic_inertia(const PointSet& set, double tol = kDefaultTolerance);

/// Vertices center + R (cos(phase + 2 pi k / n), sin(phase + 2 pi k / n)).
PointSet regular_polygon(std::size_t n, double circumradius, double phase = 0.0,
                         Vec2 center = {}, Unit unit = Unit::length);

/// Concatenation of two sets whose centroids agree within tol.
PointSet union_sets(const PointSet& first, const PointSet& second, double tol = kDefaultTolerance);

/// Rigid rotation of every point about the set's centroid.
PointSet rotate_set(const PointSet& set, double angle);

/// Reflection of every point about the line through the centroid at axis_angle.
PointSet reflect_set(const PointSet& set, double axis_angle);

/// Uniform scaling about the centroid.
PointSet scale_set(const PointSet& set, double factor);

}  // namespace isokin
