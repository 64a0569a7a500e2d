#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isokin/chains.hpp"
#include "isokin/conditioning.hpp"
#include "isokin/error.hpp"
#include "isokin/isotropy.hpp"
#include "isokin/jacobian.hpp"

namespace py = pybind11;
using namespace isokin;

namespace {

using Point = std::pair<double, double>;
using Points = std::vector<Point>;
using Rows = std::vector<std::vector<double>>;

PointSet to_set(const Points& points, const std::string& unit) {
  std::vector<Vec2> v;
  v.reserve(points.size());
  for (const auto& [x, y] : points) v.push_back({x, y});
  return PointSet(std::move(v), parse_unit(unit));
}

Points to_points(std::span<const Vec2> v) {
  Points out;
  out.reserve(v.size());
  for (const Vec2& p : v) out.emplace_back(p.x, p.y);
  return out;
}

Points to_points(const PointSet& s) { return to_points(s.points()); }

Rows to_rows(const Matrix& m) {
  Rows rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

Matrix from_rows(const Rows& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::ShapeMismatch, "rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::size_t> to_vector(const Ordering& o) { return {o.indices().begin(), o.indices().end()}; }

ModelMatrix model_from(const Points& points, bool unchecked, double tol) {
  const PointSet ks = to_set(points, "dimensionless");
  return unchecked ? ModelMatrix::unchecked(ks) : model_matrix(ks, tol);
}

py::dict configuration_dict(const ChainConfiguration& c) {
  py::dict d;
  d["joint_centers"] = to_points(c.joint_centers);
  d["operation_point"] = Point{c.operation_point.x, c.operation_point.y};
  d["r_vectors"] = to_points(c.r_vectors);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the isokin package";

  py::exception<Error>(m, "IsokinError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("isokin._core").attr("IsokinError");
      py::object instance = type(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(type.ptr(), instance.ptr());
    }
  });

  m.def(
      "regular_polygon",
      [](std::size_t n, double radius, double phase, Point center, const std::string& unit) {
        return to_points(regular_polygon(n, radius, phase, {center.first, center.second}, parse_unit(unit)));
      },
      py::arg("n"), py::arg("radius") = 1.0, py::arg("phase") = 0.0, py::arg("center") = Point{0, 0},
      py::arg("unit") = "dimensionless");

  m.def(
      "check_isotropic_set",
      [](const Points& points, double tol) {
        const IsotropyReport r = check_isotropic_set(to_set(points, "length"), tol);
        py::dict d;
        d["is_isotropic"] = r.is_isotropic;
        d["sigma_squared"] = r.sigma_squared;
        d["deviation"] = r.deviation;
        return d;
      },
      py::arg("points"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "check_model_set",
      [](const Points& points, double tol) {
        const ModelSetCheck c = check_model_set(to_set(points, "dimensionless"), tol);
        py::dict d;
        d["centered"] = c.centered;
        d["isotropic"] = c.isotropic;
        d["scaled"] = c.scaled;
        d["ok"] = c.ok();
        return d;
      },
      py::arg("points"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "union_sets",
      [](const Points& a, const Points& b, double tol) {
        return to_points(union_sets(to_set(a, "length"), to_set(b, "length"), tol));
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "rotate_set", [](const Points& s, double angle) { return to_points(rotate_set(to_set(s, "length"), angle)); },
      py::arg("points"), py::arg("angle"));
  m.def(
      "reflect_set",
      [](const Points& s, double axis) { return to_points(reflect_set(to_set(s, "length"), axis)); },
      py::arg("points"), py::arg("axis_angle"));

  m.def(
      "all_orderings",
      [](std::size_t n, std::size_t cap) {
        std::vector<std::vector<std::size_t>> out;
        for (const Ordering& o : all_orderings(n, cap)) out.push_back(to_vector(o));
        return out;
      },
      py::arg("n"), py::arg("cap") = kDefaultEnumerationCap);

  m.def(
      "dedup_orderings",
      [](const Points& points, const std::vector<std::vector<std::size_t>>& orderings, double tol) {
        std::vector<Ordering> list;
        for (const auto& o : orderings) list.emplace_back(o);
        py::list out;
        for (const OrderingClass& c : dedup_orderings(to_set(points, "length"), list, tol)) {
          std::vector<std::vector<std::size_t>> members;
          for (const Ordering& o : c.members) members.push_back(to_vector(o));
          py::dict d;
          d["representative"] = to_vector(c.representative);
          d["members"] = members;
          out.append(d);
        }
        return out;
      },
      py::arg("points"), py::arg("orderings"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "chain_links",
      [](const Points& points, const std::vector<std::size_t>& ordering) {
        const KinematicChain c = chain_from_ordering(to_set(points, "length"), Ordering(ordering));
        return std::vector<double>(c.link_lengths().begin(), c.link_lengths().end());
      },
      py::arg("points"), py::arg("ordering"));

  m.def(
      "posture_from_placement",
      [](const Points& points, const std::vector<std::size_t>& ordering) {
        const Posture p = posture_from_placement(to_set(points, "length"), Ordering(ordering));
        return std::vector<double>(p.joint_angles().begin(), p.joint_angles().end());
      },
      py::arg("points"), py::arg("ordering"));

  m.def(
      "forward_kinematics",
      [](const std::vector<double>& links, const std::vector<double>& posture) {
        return configuration_dict(forward_kinematics(KinematicChain(links), Posture(posture)));
      },
      py::arg("links"), py::arg("posture"));

  m.def(
      "jacobian",
      [](const std::vector<double>& links, const std::vector<double>& posture) {
        return to_rows(build_jacobian(forward_kinematics(KinematicChain(links), Posture(posture))).entries);
      },
      py::arg("links"), py::arg("posture"));

  m.def(
      "model_matrix",
      [](const Points& points, double tol) { return to_rows(model_matrix(to_set(points, "dimensionless"), tol).entries()); },
      py::arg("points"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "placement_model_set",
      [](const Points& points, const std::vector<std::size_t>& ordering) {
        return to_points(placement_model_set(to_set(points, "length"), Ordering(ordering)));
      },
      py::arg("points"), py::arg("ordering"));

  m.def(
      "optimal_lambda",
      [](const std::vector<double>& links, const std::vector<double>& posture, const Points& model, bool unchecked,
         double tol) {
        const ChainConfiguration c = forward_kinematics(KinematicChain(links), Posture(posture));
        const ConditioningResult r = optimal_lambda(c, model_from(model, unchecked, tol));
        py::dict d;
        d["lambda"] = r.lambda;
        d["conditioning_length"] = r.conditioning_length;
        d["residual_distance"] = r.residual_distance;
        d["objective_z"] = r.objective_z;
        return d;
      },
      py::arg("links"), py::arg("posture"), py::arg("model"), py::arg("unchecked") = false,
      py::arg("tol") = kDefaultTolerance);

  m.def(
      "characteristic_length",
      [](const std::vector<double>& links, const Points& model, bool unchecked, double tol, std::size_t starts_per_dim,
         std::size_t max_starts, bool randomized, std::uint64_t seed, bool permute_model_columns) {
        SearchParams params;
        params.starts_per_dim = starts_per_dim;
        params.max_starts = max_starts;
        params.randomized_starts = randomized;
        params.seed = seed;
        params.permute_model_columns = permute_model_columns;
        CharacteristicLengthResult r;
        {
          py::gil_scoped_release release;
          r = characteristic_length(KinematicChain(links), model_from(model, unchecked, tol), params);
        }
        py::dict d;
        d["characteristic_length"] = r.characteristic_length;
        d["lambda"] = r.lambda;
        d["best_posture"] = std::vector<double>(r.best_posture.joint_angles().begin(), r.best_posture.joint_angles().end());
        d["best_distance"] = r.best_distance;
        d["objective_z"] = r.objective_z;
        d["gradient_norm"] = r.gradient_norm;
        d["converged"] = r.converged;
        d["attains_isotropy"] = r.attains_isotropy;
        d["starts_used"] = r.starts_used;
        d["evaluations"] = r.evaluations;
        d["model_columns"] = to_vector(r.model_columns);
        return d;
      },
      py::arg("links"), py::arg("model"), py::arg("unchecked") = false, py::arg("tol") = kDefaultTolerance,
      py::arg("starts_per_dim") = 3, py::arg("max_starts") = 243, py::arg("randomized") = false, py::arg("seed") = 0,
      py::arg("permute_model_columns") = false);

  m.def(
      "condition_number_spectral", [](const Rows& rows) { return condition_number_spectral(from_rows(rows)); },
      py::arg("matrix"));
}
