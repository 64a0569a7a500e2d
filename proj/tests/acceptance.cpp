// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "isokin/conditioning.hpp"
#include "isokin/error.hpp"
#include "isokin/io.hpp"
#include "isokin/isotropy.hpp"
#include "isokin/jacobian.hpp"
#include "oracles.hpp"

using namespace isokin;
using namespace isokin::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Ordering one_based(std::initializer_list<std::size_t> idx) {
  return Ordering::from_one_based(std::vector<std::size_t>(idx));
}

std::vector<Vec2> columns(const ModelMatrix& k) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < k.cols(); ++i) out.push_back(k.k(i));
  return out;
}

Verdict model_matrix_of_square() {
  Verdict v;
  const PointSet ks = square_model_set();
  const auto t0 = Clock::now();
  const ModelMatrix k = model_matrix(ks);
  const Matrix kkt = k.entries() * k.entries().transposed();
  const MatrixIsotropy iso = is_isotropic_matrix(k.entries());
  const double elapsed = seconds_since(t0);
  v.require(k.entries() == square_model_matrix(), "K differs from the expected 3x4 matrix");
  const double err = (kkt - 4.0 * Matrix::identity(3)).max_abs();
  v.require(err < 1e-12, "K K^T error " + fmt("%.3g", err));
  v.require(iso.isotropic && std::abs(iso.sigma - 2.0) < 1e-12, "sigma = " + fmt("%.17g", iso.sigma));
  v.require(elapsed < 1e-3, "took " + fmt("%.3g", elapsed) + " s");
  v.detail = v.pass ? "K exact, |K K^T - 4 1| = " + fmt("%.1e", err) + ", sigma = 2, " + fmt("%.1f", elapsed * 1e6) + " us"
                    : v.detail;
  return v;
}

Verdict conditioning_length_at_placement() {
  Verdict v;
  const PointSet s = half_square();
  double worst_len = 0, worst_dist = 0;
  for (const Ordering& o : all_orderings(4)) {
    const ChainConfiguration c = forward_kinematics(chain_from_ordering(s, o), posture_from_placement(s, o));
    const ConditioningResult r = optimal_lambda(c, model_matrix(placement_model_set(s, o)));
    worst_len = std::max(worst_len, std::abs(r.conditioning_length - 0.5));
    worst_dist = std::max(worst_dist, r.residual_distance);
  }
  v.require(worst_len < 1e-9, "|l_P - 0.5| up to " + fmt("%.3g", worst_len));
  v.require(worst_dist < 1e-9, "residual up to " + fmt("%.3g", worst_dist));
  if (v.pass) v.detail = "24 orderings, max |l_P - 0.5| = " + fmt("%.1e", worst_len) + ", max residual = " + fmt("%.1e", worst_dist);
  return v;
}

Verdict link_length_families() {
  Verdict v;
  const PointSet s = half_square();
  const double h = kSqrt2 / 2;
  const std::vector<std::pair<Ordering, std::vector<double>>> cases{
      {one_based({1, 2, 3, 4}), {1, 1, 1, h}},
      {one_based({1, 2, 4, 3}), {1, kSqrt2, 1, h}},
      {one_based({1, 3, 2, 4}), {kSqrt2, 1, kSqrt2, h}},
  };
  double worst = 0;
  for (const auto& [o, expected] : cases) {
    const KinematicChain chain = chain_from_ordering(s, o);
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(chain[i] - expected[i]));
  }
  v.require(worst < 1e-12, "link length error " + fmt("%.3g", worst));
  if (v.pass) v.detail = "3 chains, max error " + fmt("%.1e", worst);
  return v;
}

Verdict enumeration_and_classes() {
  Verdict v;
  const PointSet s = half_square();
  const auto chains = enumerate_chains(s);
  v.require(chains.size() == 24, std::to_string(chains.size()) + " chains");
  std::vector<Ordering> orderings;
  for (const auto& c : chains) orderings.push_back(c.ordering);
  const auto classes = dedup_orderings(s, orderings);
  v.require(classes.size() == 6, std::to_string(classes.size()) + " classes");
  for (const auto& c : classes) v.require(c.members.size() == 4, "class of size " + std::to_string(c.members.size()));
  if (v.pass) v.detail = "24 chains, 6 classes of 4";
  return v;
}

Verdict characteristic_length_recovery() {
  Verdict v;
  const PointSet s = half_square();
  std::string summary;
  for (const Ordering& o : {one_based({1, 2, 3, 4}), one_based({1, 2, 4, 3}), one_based({1, 3, 2, 4})}) {
    const auto t0 = Clock::now();
    const CharacteristicLengthResult r =
        characteristic_length(chain_from_ordering(s, o), model_matrix(placement_model_set(s, o)));
    const double elapsed = seconds_since(t0);
    v.require(std::abs(r.characteristic_length - 0.5) <= 1e-4, "length " + fmt("%.10g", r.characteristic_length));
    v.require(r.best_distance < 1e-6, "distance " + fmt("%.3g", r.best_distance));
    v.require(elapsed < 10.0, "took " + fmt("%.3g", elapsed) + " s");
    summary += (summary.empty() ? "" : "; ") + fmt("L=%.9f", r.characteristic_length) + fmt(" d=%.1e", r.best_distance) +
               fmt(" %.3fs", elapsed);
  }
  if (v.pass) v.detail = summary;
  return v;
}

struct Config {
  ChainConfiguration config;
  ModelMatrix model;
};

Config random_config(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> len(0.2, 2.0), ang(-kPi, kPi);
  std::vector<double> a(n), th(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = len(rng);
    th[i] = ang(rng);
  }
  // Two points cannot form an isotropic set, so n = 2 uses an unchecked pair.
  if (n == 2)
    return {forward_kinematics(KinematicChain(a), Posture(th)),
            ModelMatrix::unchecked(PointSet({{1, 0}, {-1, 0}}, Unit::dimensionless))};
  return {forward_kinematics(KinematicChain(a), Posture(th)),
          model_matrix(regular_polygon(n, std::sqrt(2.0), ang(rng), {}, Unit::dimensionless))};
}

Verdict gradient_properties() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lam(0.1, 3.0);
  double worst_fd = 0, worst_gap = -1;
  int drawn = 0;
  for (int t = 0; t < 100;) {
    const std::size_t n = 2 + static_cast<std::size_t>(drawn++ % 5);
    const Config c = random_config(rng, n);
    ConditioningResult r;
    try {
      r = optimal_lambda(c.config, c.model);
    } catch (const Error&) {
      continue;  // no positive conditioning length at this configuration
    }
    ++t;
    const double l = lam(rng), h = 1e-5;
    const double fd = (objective_z(c.config, c.model, l + h) - objective_z(c.config, c.model, l - h)) / (2 * h);
    const double analytic = normality_residual(c.config, c.model, l) / static_cast<double>(n);
    const double rel = std::abs(analytic - fd) / std::max(std::abs(fd), 1e-300);
    worst_fd = std::max(worst_fd, std::abs(fd) < 1e-8 ? std::abs(analytic - fd) : rel);

    const double grid = z_grid_min(c.config.r_vectors, columns(c.model), 0.0, 3.0 * r.lambda, 10000);
    worst_gap = std::max(worst_gap, r.objective_z - grid);
  }
  v.require(worst_fd < 1e-6, "finite-difference mismatch " + fmt("%.3g", worst_fd));
  v.require(worst_gap <= 1e-12, "grid beat closed form by " + fmt("%.3g", worst_gap));
  if (v.pass)
    v.detail = "100 configurations, max FD rel. error " + fmt("%.1e", worst_fd) + ", max z(l*) - grid min " +
               fmt("%.1e", worst_gap);
  return v;
}

Verdict moment_identities() {
  Verdict v;
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const PointSet s(random_points(rng, 1 + t % 10, 1.0));
    const Mat3 a = geometric_inertia(s);
    const Mat3 b = geometric_inertia_from_moment(s.points());
    const Mat3 c = geometric_inertia_from_cpm(s.points());
    worst = std::max({worst, (a - b).max_abs(), (a - c).max_abs()});
    const double d = d_rms(s);
    worst = std::max(worst, std::abs(second_moment(s).trace() - static_cast<double>(s.size()) * d * d));
  }
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const Vec3 w{u(rng), u(rng), u(rng)};
    const Mat3 p = cross_product_matrix(w);
    const double sq = w.x * w.x + w.y * w.y + w.z * w.z;
    const double c[3] = {w.x, w.y, w.z};
    const Mat3 p2 = p * p;
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(p2(r, k) - (c[r] * c[k] - (r == k ? sq : 0.0))));
  }
  v.require(worst < 1e-12, "identity error " + fmt("%.3g", worst));
  if (v.pass) v.detail = "100 sets + 100 vectors, max error " + fmt("%.1e", worst);
  return v;
}

Verdict isotropy_preservation() {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> sides(3, 8);
  std::uniform_real_distribution<double> radius(0.1, 5.0), angle(-kPi, kPi), coord(-10, 10);
  int passed = 0;
  for (int t = 0; t < 50; ++t) {
    const Vec2 center{coord(rng), coord(rng)};
    const PointSet a = regular_polygon(sides(rng), radius(rng), angle(rng), center, Unit::length);
    const PointSet b = regular_polygon(sides(rng), radius(rng), angle(rng), center, Unit::length);
    const bool ok = check_isotropic_set(union_sets(a, b), 1e-9).is_isotropic &&
                    check_isotropic_set(rotate_set(a, angle(rng)), 1e-9).is_isotropic &&
                    check_isotropic_set(reflect_set(b, angle(rng)), 1e-9).is_isotropic;
    passed += ok ? 1 : 0;
  }
  v.require(passed == 50, std::to_string(50 - passed) + " of 50 instances failed");
  if (v.pass) v.detail = "50 instances: union, rotation, reflection all isotropic";
  return v;
}

Verdict isotropic_chains() {
  Verdict v;
  double worst = 0;
  std::size_t count = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    const PointSet s = regular_polygon(n, std::sqrt(2.0), 0.0, {}, Unit::length);
    for (const Ordering& o : all_orderings(n)) {
      const ChainConfiguration c = forward_kinematics(chain_from_ordering(s, o), posture_from_placement(s, o));
      const ConditioningResult r = optimal_lambda(c, model_matrix(placement_model_set(s, o)));
      const double kappa = condition_number_spectral(normalize_jacobian(build_jacobian(c), r.conditioning_length).entries);
      worst = std::max(worst, std::abs(kappa - 1.0));
      ++count;
    }
  }
  v.require(worst < 1e-9, "|kappa - 1| up to " + fmt("%.3g", worst));
  if (v.pass) v.detail = std::to_string(count) + " chains, max |kappa - 1| = " + fmt("%.1e", worst);
  return v;
}

Verdict cli_determinism() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "isokin_acceptance";
  std::filesystem::create_directories(dir);
  const std::string set = (dir / "half_square.json").string();
  DesignDocument doc;
  doc.point_set = half_square();
  write_file_atomic(set, serialize(doc));

  auto run = [](std::vector<std::string> args, std::string& out) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    out = o.str();
    return code;
  };
  std::string svg1, svg2, csv;
  v.require(run({"render", set, "--dedup"}, svg1) == 0, "render failed");
  v.require(run({"render", set, "--dedup"}, svg2) == 0, "second render failed");
  v.require(!svg1.empty() && svg1 == svg2, "render output differs between runs");
  std::size_t panels = 0;
  for (auto pos = svg1.find("<g "); pos != std::string::npos; pos = svg1.find("<g ", pos + 1)) ++panels;
  v.require(panels == 6, std::to_string(panels) + " panels");

  v.require(run({"analyze", set, "--all-orderings"}, csv) == 0, "analyze failed");
  std::istringstream lines(csv);
  std::string line;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++rows;
  }
  v.require(rows == 24, std::to_string(rows) + " CSV rows");
  if (v.pass) v.detail = "6-panel SVG identical across runs (" + std::to_string(svg1.size()) + " bytes), 24 CSV rows";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"model matrix of the square set", model_matrix_of_square},
      {"conditioning length at placement postures", conditioning_length_at_placement},
      {"link-length families", link_length_families},
      {"chain enumeration and rotation classes", enumeration_and_classes},
      {"characteristic length recovery", characteristic_length_recovery},
      {"objective gradient and closed-form optimum", gradient_properties},
      {"moment-of-inertia and cross-product identities", moment_identities},
      {"isotropy preserved by union, rotation, reflection", isotropy_preservation},
      {"isotropic chains from regular polygons", isotropic_chains},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
