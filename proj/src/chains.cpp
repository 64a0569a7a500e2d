#include "isokin/chains.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "isokin/error.hpp"

namespace isokin {

Ordering::Ordering(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::vector<bool> seen(indices_.size(), false);
  for (std::size_t i : indices_) {
    if (i >= indices_.size() || seen[i])
      throw Error(ErrorCode::InvalidOrdering, "ordering is not a permutation of 0.." +
                                                  std::to_string(indices_.size()) + "-1");
    seen[i] = true;
  }
}

Ordering Ordering::identity(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return Ordering(std::move(idx));
}

Ordering Ordering::from_one_based(std::span<const std::size_t> indices) {
  std::vector<std::size_t> idx;
  idx.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i == 0) throw Error(ErrorCode::InvalidOrdering, "one-based ordering contains 0");
    idx.push_back(i - 1);
  }
  return Ordering(std::move(idx));
}

std::vector<std::size_t> Ordering::one_based() const {
  std::vector<std::size_t> out(indices_);
  for (std::size_t& i : out) ++i;
  return out;
}

KinematicChain::KinematicChain(std::vector<double> link_lengths) : links_(std::move(link_lengths)) {
  if (links_.empty()) throw Error(ErrorCode::TooFewPoints, "a chain needs at least one link");
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const double a = links_[i];
    if (!std::isfinite(a)) throw Error(ErrorCode::NonFinite, "link lengths must be finite");
    if (a < 0.0 || (a == 0.0 && i + 1 < links_.size()))
      throw Error(ErrorCode::DegenerateLink, "link " + std::to_string(i + 1) + " has length " + std::to_string(a));
  }
}

double reduce_angle(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

Posture::Posture(std::vector<double> joint_angles) : angles_(std::move(joint_angles)) {
  for (double& a : angles_) {
    if (!std::isfinite(a)) throw Error(ErrorCode::NonFinite, "joint angles must be finite");
    a = reduce_angle(a);
  }
}

ChainConfiguration ChainConfiguration::from_r_vectors(std::vector<Vec2> r) {
  ChainConfiguration config;
  config.joint_centers.reserve(r.size());
  for (const Vec2& v : r) config.joint_centers.push_back(-v);
  config.r_vectors = std::move(r);
  return config;
}

ChainConfiguration translated(const ChainConfiguration& config, Vec2 offset) {
  ChainConfiguration out = config;
  for (Vec2& j : out.joint_centers) j = j + offset;
  out.operation_point = out.operation_point + offset;
  return out;
}

ChainConfiguration rotated(const ChainConfiguration& config, double angle) {
  const Vec2 pivot = config.joint_centers.empty() ? Vec2{} : config.joint_centers.front();
  ChainConfiguration out;
  out.joint_centers.reserve(config.joint_centers.size());
  for (const Vec2& j : config.joint_centers) out.joint_centers.push_back(pivot + rotate(j - pivot, angle));
  out.operation_point = pivot + rotate(config.operation_point - pivot, angle);
  out.r_vectors.reserve(config.r_vectors.size());
  for (const Vec2& r : config.r_vectors) out.r_vectors.push_back(rotate(r, angle));
  return out;
}

KinematicChain chain_from_ordering(const PointSet& set, const Ordering& ordering) {
  const std::size_t n = set.size();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "a chain needs at least two points");
  if (ordering.size() != n)
    throw Error(ErrorCode::ArityMismatch, "ordering has " + std::to_string(ordering.size()) +
                                              " entries for " + std::to_string(n) + " points");
  std::vector<double> links(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    links[i] = norm(set[ordering[i + 1]] - set[ordering[i]]);
    if (links[i] == 0.0)
      throw Error(ErrorCode::DegenerateLink, "points " + std::to_string(ordering[i] + 1) + " and " +
                                                 std::to_string(ordering[i + 1] + 1) + " coincide");
  }
  links[n - 1] = norm(centroid(set) - set[ordering[n - 1]]);
  return KinematicChain(std::move(links));
}

std::vector<Ordering> all_orderings(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw Error(ErrorCode::EnumerationTooLarge,
                std::to_string(n) + "! orderings exceed the cap of " + std::to_string(cap) + " points");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Ordering> out;
  do {
    out.emplace_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

std::vector<EnumeratedChain> enumerate_chains(const PointSet& set, std::size_t cap) {
  if (set.size() < 2) throw Error(ErrorCode::TooFewPoints, "enumeration needs at least two points");
  std::vector<EnumeratedChain> out;
  for (Ordering& ordering : all_orderings(set.size(), cap)) {
    KinematicChain chain = chain_from_ordering(set, ordering);
    out.push_back({std::move(ordering), std::move(chain)});
  }
  return out;
}

namespace {

/// Labels points so that coincident points (within tol) share a label.
std::vector<std::size_t> position_labels(std::span<const Vec2> points, double tol) {
  std::vector<std::size_t> labels(points.size());
  std::vector<Vec2> reps;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t label = reps.size();
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (norm(points[i] - reps[r]) <= tol) {
        label = r;
        break;
      }
    }
    if (label == reps.size()) reps.push_back(points[i]);
    labels[i] = label;
  }
  return labels;
}

struct Symmetry {
  double angle;
  /// Image label of every position label.
  std::vector<std::size_t> label_map;
};

std::vector<Symmetry> symmetry_group(const PointSet& set, double tol) {
  const Vec2 c = centroid(set);
  std::vector<Vec2> offsets;
  offsets.reserve(set.size());
  for (const Vec2& p : set) offsets.push_back(p - c);
  const std::vector<std::size_t> labels = position_labels(set.points(), tol);
  const std::size_t label_count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;

  std::vector<std::size_t> multiplicity(label_count, 0);
  std::vector<Vec2> label_offset(label_count);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++multiplicity[labels[i]];
    label_offset[labels[i]] = offsets[i];
  }

  std::vector<Symmetry> group;
  std::vector<std::size_t> identity_map(label_count);
  std::iota(identity_map.begin(), identity_map.end(), std::size_t{0});
  group.push_back({0.0, identity_map});

  // The farthest point fixes the candidate rotations.
  std::size_t anchor = 0;
  for (std::size_t l = 0; l < label_count; ++l)
    if (norm(label_offset[l]) > norm(label_offset[anchor])) anchor = l;
  const double anchor_radius = norm(label_offset[anchor]);
  if (anchor_radius <= tol) return group;

  const double anchor_angle = std::atan2(label_offset[anchor].y, label_offset[anchor].x);
  for (std::size_t target = 0; target < label_count; ++target) {
    if (target == anchor || std::abs(norm(label_offset[target]) - anchor_radius) > tol) continue;
    double angle = std::atan2(label_offset[target].y, label_offset[target].x) - anchor_angle;
    angle = std::fmod(angle + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    std::vector<std::size_t> map(label_count);
    bool ok = true;
    for (std::size_t l = 0; l < label_count && ok; ++l) {
      const Vec2 image = rotate(label_offset[l], angle);
      std::size_t hit = label_count;
      for (std::size_t m = 0; m < label_count; ++m) {
        if (norm(image - label_offset[m]) <= tol) {
          hit = m;
          break;
        }
      }
      ok = hit != label_count && multiplicity[hit] == multiplicity[l];
      map[l] = hit;
    }
    if (!ok) continue;
    const bool duplicate = std::any_of(group.begin(), group.end(), [&](const Symmetry& s) { return s.label_map == map; });
    if (!duplicate) group.push_back({angle, std::move(map)});
  }
  std::sort(group.begin(), group.end(), [](const Symmetry& a, const Symmetry& b) { return a.angle < b.angle; });
  return group;
}

}  // namespace

std::vector<double> rotational_symmetries(const PointSet& set, double tol) {
  std::vector<double> angles;
  for (const Symmetry& s : symmetry_group(set, tol)) angles.push_back(s.angle);
  return angles;
}

std::vector<OrderingClass> dedup_orderings(const PointSet& set, std::span<const Ordering> orderings, double tol) {
  const std::vector<std::size_t> labels = position_labels(set.points(), tol);
  const std::vector<Symmetry> group = symmetry_group(set, tol);

  // Canonical key: the smallest label sequence over all symmetry images.
  std::map<std::vector<std::size_t>, OrderingClass> classes;
  std::vector<std::size_t> seq(set.size());
  for (const Ordering& ordering : orderings) {
    if (ordering.size() != set.size())
      throw Error(ErrorCode::ArityMismatch, "ordering arity does not match the point set");
    std::vector<std::size_t> key;
    for (const Symmetry& s : group) {
      for (std::size_t i = 0; i < ordering.size(); ++i) seq[i] = s.label_map[labels[ordering[i]]];
      if (key.empty() || seq < key) key = seq;
    }
    auto [it, inserted] = classes.try_emplace(std::move(key), OrderingClass{ordering, {}});
    OrderingClass& cls = it->second;
    cls.members.push_back(ordering);
    if (ordering < cls.representative) cls.representative = ordering;
  }

  std::vector<OrderingClass> out;
  out.reserve(classes.size());
  for (auto& [key, cls] : classes) {
    std::sort(cls.members.begin(), cls.members.end());
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(),
            [](const OrderingClass& a, const OrderingClass& b) { return a.representative < b.representative; });
  return out;
}

ChainConfiguration forward_kinematics(const KinematicChain& chain, const Posture& posture) {
  const std::size_t n = chain.size();
  if (posture.size() != n)
    throw Error(ErrorCode::ArityMismatch, "chain has " + std::to_string(n) + " links but posture has " +
                                              std::to_string(posture.size()) + " angles");
  ChainConfiguration config;
  config.joint_centers.resize(n);
  double phi = 0.0;
  Vec2 joint;
  for (std::size_t i = 0; i < n; ++i) {
    config.joint_centers[i] = joint;
    phi += posture[i];
    joint = joint + chain[i] * unit_vector(phi);
  }
  config.operation_point = joint;
  config.r_vectors.reserve(n);
  for (const Vec2& j : config.joint_centers) config.r_vectors.push_back(config.operation_point - j);
  return config;
}

Posture posture_from_placement(const PointSet& set, const Ordering& ordering) {
  chain_from_ordering(set, ordering);
  const std::size_t n = set.size();
  const Vec2 c = centroid(set);
  std::vector<double> angles(n);
  double previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 to = i + 1 < n ? set[ordering[i + 1]] : c;
    const Vec2 d = to - set[ordering[i]];
    // A vanishing last link leaves its direction free; keep it straight.
    const double absolute = (d.x == 0.0 && d.y == 0.0) ? previous : std::atan2(d.y, d.x);
    angles[i] = absolute - previous;
    previous = absolute;
  }
  return Posture(std::move(angles));
}

}  // namespace isokin
