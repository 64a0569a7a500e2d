#pragma once

// Serial n-revolute chains induced by an ordered planar point set, and their
// forward kinematics.
//
// Indices are zero-based throughout the library; the CLI and the JSON design
// document use one-based orderings.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "isokin/geometry.hpp"

namespace isokin {

inline constexpr std::size_t kDefaultEnumerationCap = 8;

/// A permutation of 0..n-1 giving the order in which points become joints.
class Ordering {
 public:
  explicit Ordering(std::vector<std::size_t> indices);

  static Ordering identity(std::size_t n);
  /// Builds from one-based indices, as written by users.
  static Ordering from_one_based(std::span<const std::size_t> indices);

  std::size_t size() const { return indices_.size(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  std::span<const std::size_t> indices() const { return indices_; }
  std::vector<std::size_t> one_based() const;

  friend bool operator==(const Ordering&, const Ordering&) = default;
  friend auto operator<=>(const Ordering& a, const Ordering& b) { return a.indices_ <=> b.indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Link lengths a_1..a_n; a_n runs from the last joint to the operation point
/// and is the only one allowed to vanish.
class KinematicChain {
 public:
  explicit KinematicChain(std::vector<double> link_lengths);

  std::size_t size() const { return links_.size(); }
  std::span<const double> link_lengths() const { return links_; }
  double operator[](std::size_t i) const { return links_[i]; }

 private:
  std::vector<double> links_;
};

/// Reduces an angle to (-pi, pi].
double reduce_angle(double angle);

/// Joint angles; the first is absolute, the rest relative to the previous link.
class Posture {
 public:
  explicit Posture(std::vector<double> joint_angles);

  std::size_t size() const { return angles_.size(); }
  std::span<const double> joint_angles() const { return angles_; }
  double operator[](std::size_t i) const { return angles_[i]; }

 private:
  std::vector<double> angles_;
};

struct ChainConfiguration {
  std::vector<Vec2> joint_centers;
  Vec2 operation_point;
  /// r_i = operation_point - joint_centers[i].
  std::vector<Vec2> r_vectors;

  std::size_t size() const { return r_vectors.size(); }

  /// Configuration with the operation point at the origin and the given r_i.
  static ChainConfiguration from_r_vectors(std::vector<Vec2> r);
};

/// Rigid translation of every point of the configuration.
ChainConfiguration translated(const ChainConfiguration& config, Vec2 offset);

/// Rigid rotation of the configuration about its first joint center.
ChainConfiguration rotated(const ChainConfiguration& config, double angle);

KinematicChain chain_from_ordering(const PointSet& set, const Ordering& ordering);

struct EnumeratedChain {
  Ordering ordering;
  KinematicChain chain;
};

/// All n! orderings in lexicographic order with their chains.
std::vector<EnumeratedChain> enumerate_chains(const PointSet& set, std::size_t cap = kDefaultEnumerationCap);

/// Every permutation of 0..n-1 in lexicographic order.
std::vector<Ordering> all_orderings(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

struct OrderingClass {
  /// Lexicographically smallest member.
  Ordering representative;
  std::vector<Ordering> members;
};

/// Groups orderings whose ordered point sequences differ by a rotation about
/// the centroid. Classes are sorted by representative.
std::vector<OrderingClass> dedup_orderings(const PointSet& set, std::span<const Ordering> orderings,
                                           double tol = kDefaultTolerance);

/// Rotations about the centroid that map the set onto itself, as angles in
/// [0, 2 pi). Always contains 0.
std::vector<double> rotational_symmetries(const PointSet& set, double tol = kDefaultTolerance);

/// Base joint at the origin, zero base orientation.
ChainConfiguration forward_kinematics(const KinematicChain& chain, const Posture& posture);

/// Posture that places joint i on point ordering[i] and the operation point on
/// the centroid, once the base is translated to the first ordered point.
Posture posture_from_placement(const PointSet& set, const Ordering& ordering);

}  // namespace isokin
