#include <map>
#include <random>

#include "doctest.h"
#include "isokin/chains.hpp"
#include "isokin/error.hpp"
#include "isokin/isotropy.hpp"
#include "oracles.hpp"

using namespace isokin;
using namespace isokin::testing;

namespace {

Ordering one_based(std::initializer_list<std::size_t> idx) {
  return Ordering::from_one_based(std::vector<std::size_t>(idx));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

void check_links(const KinematicChain& chain, std::initializer_list<double> expected, double tol) {
  REQUIRE(chain.size() == expected.size());
  std::size_t i = 0;
  for (double a : expected) CHECK(near(chain[i++], a, tol));
}

}  // namespace

TEST_CASE("orderings must be permutations") {
  CHECK(code_of([] { Ordering({0, 0, 1}); }) == ErrorCode::InvalidOrdering);
  CHECK(code_of([] { Ordering({0, 3}); }) == ErrorCode::InvalidOrdering);
  CHECK(code_of([] { one_based({0, 1}); }) == ErrorCode::InvalidOrdering);
  CHECK(one_based({2, 1, 3}).one_based() == std::vector<std::size_t>{2, 1, 3});
}

TEST_CASE("chain link lengths from orderings of the half square") {
  const PointSet s = half_square();
  check_links(chain_from_ordering(s, one_based({1, 2, 3, 4})), {1, 1, 1, kSqrt2 / 2}, 1e-12);
  check_links(chain_from_ordering(s, one_based({1, 2, 4, 3})), {1, kSqrt2, 1, kSqrt2 / 2}, 1e-12);
  check_links(chain_from_ordering(s, one_based({1, 3, 2, 4})), {kSqrt2, 1, kSqrt2, kSqrt2 / 2}, 1e-12);
}

TEST_CASE("chain construction errors") {
  const PointSet dup{{0, 0}, {0, 0}, {1, 0}};
  CHECK(code_of([&] { chain_from_ordering(dup, Ordering::identity(3)); }) == ErrorCode::DegenerateLink);
  CHECK(code_of([] { chain_from_ordering(PointSet{{0, 0}}, Ordering::identity(1)); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { chain_from_ordering(half_square(), Ordering::identity(3)); }) == ErrorCode::ArityMismatch);
  CHECK(code_of([] { KinematicChain({1.0, 0.0, 1.0}); }) == ErrorCode::DegenerateLink);
  CHECK(code_of([] { KinematicChain({1.0, -1.0}); }) == ErrorCode::DegenerateLink);
  // The last link may vanish when the last joint sits on the centroid.
  CHECK(KinematicChain({1.0, 0.0}).size() == 2);
  const PointSet centered{{0, 0}, {1, 0}, {-1, 0}};
  CHECK(chain_from_ordering(centered, one_based({2, 3, 1}))[2] == 0.0);
}

TEST_CASE("enumeration produces n! chains") {
  CHECK(enumerate_chains(half_square()).size() == 24);
  CHECK(enumerate_chains(PointSet{{0, 0}, {1, 0}}).size() == 2);
  CHECK(code_of([] { enumerate_chains(regular_polygon(9, 1.0)); }) == ErrorCode::EnumerationTooLarge);
  CHECK(enumerate_chains(regular_polygon(5, 1.0), 5).size() == 120);

  const auto all = enumerate_chains(half_square());
  CHECK(all.front().ordering == Ordering::identity(4));
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].ordering < all[i].ordering);
}

TEST_CASE("rotation classes of the square's orderings") {
  const PointSet s = half_square();
  const std::vector<Ordering> all = all_orderings(4);
  const auto classes = dedup_orderings(s, all);
  REQUIRE(classes.size() == 6);
  for (const auto& c : classes) {
    CHECK(c.members.size() == 4);
    CHECK(c.representative == c.members.front());
  }
  CHECK(classes.front().representative == Ordering::identity(4));

  const std::vector<Ordering> single{one_based({2, 4, 1, 3})};
  const auto one = dedup_orderings(s, single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].members.size() == 1);

  const std::vector<Ordering> pair{one_based({1, 2, 3, 4}), one_based({2, 3, 4, 1})};
  CHECK(dedup_orderings(s, pair).size() == 1);
  CHECK(rotation_equivalent_brute(s, pair[0], pair[1], 1e-9));
}

TEST_CASE("dedup agrees with brute-force rotation search") {
  std::mt19937_64 rng(5);
  std::vector<PointSet> sets{half_square(), regular_polygon(5, 1.0, 0.3), regular_polygon(4, 2.0, 0.1, {1, 2}),
                             union_sets(regular_polygon(3, 1.0), regular_polygon(3, 2.0, 0.5)),
                             PointSet(random_points(rng, 4, 2.0)), PointSet{{1, 0}, {-1, 0}, {0, 0}, {0, 0}}};
  for (const PointSet& s : sets) {
    const std::vector<Ordering> all = all_orderings(s.size());
    const auto classes = dedup_orderings(s, all);
    std::map<Ordering, std::size_t> class_of;
    std::size_t total = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      total += classes[c].members.size();
      for (const Ordering& o : classes[c].members) class_of[o] = c;
    }
    CHECK(total == all.size());
    for (std::size_t i = 0; i < all.size(); i += 3)
      for (std::size_t j = 0; j < all.size(); j += 2)
        CHECK((class_of[all[i]] == class_of[all[j]]) == rotation_equivalent_brute(s, all[i], all[j], 1e-9));
  }
}

TEST_CASE("sets without rotational symmetry give singleton classes") {
  const PointSet s{{0, 0}, {3, 0}, {0, 1}, {1, 2}};
  CHECK(rotational_symmetries(s).size() == 1);
  const auto classes = dedup_orderings(s, all_orderings(4));
  CHECK(classes.size() == 24);
}

TEST_CASE("symmetry group of regular polygons") {
  for (std::size_t n = 3; n <= 8; ++n) CHECK(rotational_symmetries(regular_polygon(n, 1.0, 0.2)).size() == n);
}

TEST_CASE("forward kinematics") {
  const KinematicChain two({1, 1});
  const ChainConfiguration straight = forward_kinematics(two, Posture({0, 0}));
  CHECK(straight.joint_centers[0] == Vec2{0, 0});
  CHECK(straight.joint_centers[1] == Vec2{1, 0});
  CHECK(straight.operation_point == Vec2{2, 0});
  CHECK(straight.r_vectors[0] == Vec2{2, 0});
  CHECK(straight.r_vectors[1] == Vec2{1, 0});

  const ChainConfiguration elbow = forward_kinematics(two, Posture({0, kPi / 2}));
  CHECK(near(elbow.joint_centers[1], {1, 0}, 1e-15));
  CHECK(near(elbow.operation_point, {1, 1}, 1e-15));
  CHECK(near(elbow.r_vectors[0], {1, 1}, 1e-15));
  CHECK(near(elbow.r_vectors[1], {0, 1}, 1e-15));

  CHECK(code_of([&] { forward_kinematics(two, Posture({0, 0, 0})); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("forward kinematics preserves link lengths") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> len(0.1, 3.0), ang(-kPi, kPi);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 7;
    std::vector<double> a(n), th(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = len(rng);
      th[i] = ang(rng);
    }
    const ChainConfiguration c = forward_kinematics(KinematicChain(a), Posture(th));
    for (std::size_t i = 0; i + 1 < n; ++i)
      CHECK(near(norm(c.joint_centers[i + 1] - c.joint_centers[i]), a[i], 1e-12));
    CHECK(near(norm(c.r_vectors[n - 1]), a[n - 1], 1e-12));
  }
}

TEST_CASE("postures are stored in (-pi, pi]") {
  const Posture p({kPi, -kPi, 3 * kPi, 2 * kPi, -0.5});
  CHECK(p[0] == doctest::Approx(kPi));
  CHECK(p[1] == doctest::Approx(kPi));
  CHECK(p[2] == doctest::Approx(kPi));
  CHECK(p[3] == doctest::Approx(0.0));
  CHECK(p[4] == -0.5);
  for (double a : p.joint_angles()) CHECK((a > -kPi && a <= kPi));
}

TEST_CASE("placement postures") {
  const PointSet square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  const Posture p = posture_from_placement(square, Ordering::identity(4));
  CHECK(p[0] == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(p[3] == doctest::Approx(3 * kPi / 4).epsilon(1e-15));

  const PointSet seg{{0, 0}, {1, 0}};
  const Posture q = posture_from_placement(seg, Ordering::identity(2));
  CHECK(q[0] == 0.0);
  CHECK(q[1] == doctest::Approx(kPi));
  const ChainConfiguration c = forward_kinematics(chain_from_ordering(seg, Ordering::identity(2)), q);
  CHECK(near(c.operation_point, {0.5, 0}, 1e-15));
}

TEST_CASE("placement posture reproduces the points and the centroid") {
  std::mt19937_64 rng(41);
  std::vector<PointSet> sets{half_square(), regular_polygon(5, 1.5, 0.2, {1, -1}), PointSet(random_points(rng, 5, 3.0)),
                             PointSet(random_points(rng, 6, 10.0))};
  for (const PointSet& s : sets) {
    for (const Ordering& o : all_orderings(s.size())) {
      const ChainConfiguration c = translated(
          forward_kinematics(chain_from_ordering(s, o), posture_from_placement(s, o)), s[o[0]]);
      for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(near(c.joint_centers[i], s[o[i]], 1e-9));
      REQUIRE(near(c.operation_point, centroid(s), 1e-9));
    }
  }
}

TEST_CASE("placement r-vectors on the half square are half the model set up to a rotation") {
  const PointSet ks = square_model_set();
  const PointSet s = half_square();
  const Ordering o = Ordering::identity(4);
  const ChainConfiguration c = forward_kinematics(chain_from_ordering(s, o), posture_from_placement(s, o));
  // r_i = centroid - p_i = -k_i / 2, i.e. k_i / 2 turned by pi.
  for (std::size_t i = 0; i < 4; ++i) CHECK(near(rotate(c.r_vectors[i], kPi), 0.5 * ks[i], 1e-12));
}

TEST_CASE("link lengths are invariant under rotation about the centroid") {
  std::mt19937_64 rng(2);
  const PointSet s(random_points(rng, 5, 2.0));
  const PointSet t = [&] {
    const Vec2 c = centroid(s);
    return s.transformed([&](Vec2 p) { return c + rotate(p - c, 1.1); });
  }();
  for (const Ordering& o : all_orderings(5)) {
    const KinematicChain a = chain_from_ordering(s, o);
    const KinematicChain b = chain_from_ordering(t, o);
    for (std::size_t i = 0; i < 5; ++i) REQUIRE(near(a[i], b[i], 1e-12));
  }
}
