#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "covgrid/cli.hpp"
#include "covgrid/corpus.hpp"
#include "covgrid/decomposition.hpp"
#include "covgrid/error.hpp"
#include "covgrid/geometry.hpp"
#include "covgrid/io.hpp"
#include "covgrid/planner.hpp"

namespace py = pybind11;
using namespace covgrid;

namespace {

using XY = std::pair<double, double>;

std::vector<Point> to_points(const std::vector<XY>& xy) {
  std::vector<Point> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

std::vector<XY> to_pairs(const std::vector<Point>& pts) {
  std::vector<XY> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

Decomposition decompose(const std::vector<XY>& polygon, double r, const std::string& method,
                        bool direct_nonconvex) {
  const Polygon p(to_points(polygon));
  if (method_from_string(method) == Method::kSgd) return sgd_decompose(p, r);
  return agd_decompose(p, r, {direct_nonconvex});
}

DistanceMatrix matrix_for(const std::vector<XY>& centers, double v) {
  const std::vector<Point> pts = to_points(centers);
  return distance_matrix(pts, v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grid decomposition of polygons and coverage-time planning";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<DegeneratePolygon>(m, "DegeneratePolygon", validation.ptr());
  py::register_exception<NonPositiveRadius>(m, "NonPositiveRadius", validation.ptr());
  py::register_exception<NonPositiveSpeed>(m, "NonPositiveSpeed", validation.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", base.ptr());
  py::register_exception<InvalidPermutation>(m, "InvalidPermutation", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.attr("DEFAULT_RADIUS") = kDefaultRadius;
  m.attr("DEFAULT_SPEED") = kDefaultSpeed;
  m.attr("DEFAULT_EXACT_CAP") = kDefaultExactCap;

  m.def("polygon_area",
        [](const std::vector<XY>& v) { return polygon_area(Polygon(to_points(v))); },
        py::arg("polygon"));
  m.def("validate_and_orient",
        [](const std::vector<XY>& v) { return to_pairs(Polygon(to_points(v)).vertices()); },
        py::arg("polygon"), "Validated counter-clockwise copy of the ring.");
  m.def("convex_hull",
        [](const std::vector<XY>& v) {
          const std::vector<Point> pts = to_points(v);
          return to_pairs(convex_hull(std::span<const Point>(pts)));
        },
        py::arg("points"));
  m.def("normalize",
        [](const std::vector<XY>& v) {
          const Normalized n = normalize(Polygon(to_points(v)));
          return py::make_tuple(to_pairs(n.polygon.vertices()), n.transform.angle(),
                                XY{n.transform.translation().x, n.transform.translation().y});
        },
        py::arg("polygon"),
        "Returns (vertices, angle, translation) of the normalized polygon.");

  py::class_<Cell>(m, "Cell")
      .def_property_readonly("center", [](const Cell& c) { return XY{c.center.x, c.center.y}; })
      .def_readonly("width", &Cell::width)
      .def_readonly("height", &Cell::height);

  py::class_<ChannelTrace>(m, "ChannelTrace")
      .def_readonly("y_bottom", &ChannelTrace::y_bottom)
      .def_readonly("y_top", &ChannelTrace::y_top)
      .def_readonly("y_top_adjusted", &ChannelTrace::y_top_adjusted)
      .def_readonly("length", &ChannelTrace::length)
      .def_readonly("cells", &ChannelTrace::cells)
      .def_readonly("excess", &ChannelTrace::excess)
      .def_readonly("delta", &ChannelTrace::delta)
      .def_readonly("x_min", &ChannelTrace::x_min)
      .def_readonly("x_max", &ChannelTrace::x_max);

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("cells", &Decomposition::cells)
      .def_readonly("channels", &Decomposition::channels)
      .def_readonly("radius", &Decomposition::radius)
      .def_readonly("hull_used", &Decomposition::hull_used)
      .def_property_readonly("method",
                             [](const Decomposition& d) { return std::string(to_string(d.method)); })
      .def_property_readonly("centers", [](const Decomposition& d) { return to_pairs(d.centers()); })
      .def("covers", [](const Decomposition& d, XY p) { return d.covers({p.first, p.second}); })
      .def("to_json", &write_decomposition)
      .def_static("from_json", [](const std::string& text) { return read_decomposition(text); })
      .def("render_svg",
           [](const Decomposition& d, std::optional<std::vector<std::size_t>> order) {
             if (!order) return render_svg(d);
             PathPlan plan;
             plan.order = *order;
             return render_svg(d, plan);
           },
           py::arg("order") = py::none())
      .def("__len__", [](const Decomposition& d) { return d.cells.size(); })
      .def("__eq__", [](const Decomposition& a, const Decomposition& b) { return a == b; });

  m.def("decompose", &decompose, py::arg("polygon"), py::arg("r") = kDefaultRadius,
        py::arg("method") = "agd", py::arg("direct_nonconvex") = false);
  m.def("sgd_lower_bound", &sgd_lower_bound, py::arg("n_cells"), py::arg("r"), py::arg("v"));

  py::class_<PathPlan>(m, "PathPlan")
      .def_readonly("order", &PathPlan::order)
      .def_readonly("t_cov", &PathPlan::t_cov)
      .def_readonly("optimal", &PathPlan::optimal)
      .def_property_readonly("mode", [](const PathPlan& p) { return std::string(to_string(p.mode)); })
      .def("to_json", &write_plan);

  py::class_<ArcSolution>(m, "ArcSolution")
      .def_property_readonly("arcs",
                             [](const ArcSolution& s) {
                               std::vector<std::pair<std::size_t, std::size_t>> out;
                               for (const Arc& a : s.arcs) out.emplace_back(a.from, a.to);
                               return out;
                             })
      .def_readonly("start", &ArcSolution::start)
      .def_readonly("end", &ArcSolution::end)
      .def_readonly("t_cov", &ArcSolution::t_cov)
      .def_readonly("optimal", &ArcSolution::optimal)
      .def_readonly("single_path", &ArcSolution::single_path)
      .def("to_json", &write_arc_solution);

  m.def("solve_valid_path",
        [](const std::vector<XY>& centers, double v, std::size_t cap, bool free_endpoints) {
          return solve_valid_path(matrix_for(centers, v), {cap, free_endpoints});
        },
        py::arg("centers"), py::arg("v") = kDefaultSpeed, py::arg("exact_cap") = kDefaultExactCap,
        py::arg("free_endpoints") = false);
  m.def("solve_paper_mode",
        [](const std::vector<XY>& centers, double v, std::size_t cap, bool free_endpoints) {
          return solve_paper_mode(matrix_for(centers, v), {cap, free_endpoints});
        },
        py::arg("centers"), py::arg("v") = kDefaultSpeed, py::arg("exact_cap") = kDefaultExactCap,
        py::arg("free_endpoints") = false);
  m.def("heuristic_path",
        [](const std::vector<XY>& centers, double v, bool free_endpoints) {
          return heuristic_path(matrix_for(centers, v), free_endpoints);
        },
        py::arg("centers"), py::arg("v") = kDefaultSpeed, py::arg("free_endpoints") = false);
  m.def("coverage_time",
        [](const std::vector<std::size_t>& order, const std::vector<XY>& centers, double v) {
          return coverage_time(order, matrix_for(centers, v));
        },
        py::arg("order"), py::arg("centers"), py::arg("v") = kDefaultSpeed);

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("area", &ComparisonRow::area)
      .def_readonly("n_sgd", &ComparisonRow::n_sgd)
      .def_readonly("n_agd", &ComparisonRow::n_agd)
      .def_readonly("cell_reduction", &ComparisonRow::cell_reduction)
      .def_readonly("z_sgd", &ComparisonRow::z_sgd)
      .def_readonly("z_agd", &ComparisonRow::z_agd)
      .def_readonly("z_agd_optimal", &ComparisonRow::z_agd_optimal)
      .def_readonly("z_agd_paper", &ComparisonRow::z_agd_paper)
      .def_readonly("relative_improvement", &ComparisonRow::relative_improvement)
      .def_readonly("absolute_gap", &ComparisonRow::absolute_gap);

  m.def("compare_methods",
        [](const std::vector<XY>& polygon, double r, double v, std::size_t cap) {
          return compare_methods(Polygon(to_points(polygon)), r, v, {cap, false});
        },
        py::arg("polygon"), py::arg("r") = kDefaultRadius, py::arg("v") = kDefaultSpeed,
        py::arg("exact_cap") = kDefaultExactCap);
  m.def("random_convex_polygon",
        [](std::uint64_t seed) { return to_pairs(random_convex_polygon(seed).vertices()); },
        py::arg("seed"));

  m.def("run_cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "covgrid");
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");
}
