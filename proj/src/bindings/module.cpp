#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slapmap/ergodic.hpp"
#include "slapmap/geometry.hpp"
#include "slapmap/kite.hpp"
#include "slapmap/lorenz.hpp"
#include "slapmap/nonergodic.hpp"
#include "slapmap/regular.hpp"
#include "slapmap/triangles.hpp"

namespace py = pybind11;
using namespace slapmap;

PYBIND11_MODULE(_slapmaps, m) {
    m.doc() = "slap maps of simple polygons: construction and ergodic analysis";

    py::register_exception<Error>(m, "SlapmapError");

    py::enum_<Side>(m, "Side")
        .value("left", Side::left)
        .value("right", Side::right);

    py::class_<AffineBranch>(m, "AffineBranch")
        .def_readonly("lo", &AffineBranch::lo)
        .def_readonly("hi", &AffineBranch::hi)
        .def_readonly("slope", &AffineBranch::slope)
        .def_readonly("intercept", &AffineBranch::intercept)
        .def("__call__", &AffineBranch::at);

    py::class_<PiecewiseAffineMap>(m, "PiecewiseAffineMap")
        .def_property_readonly("domain_lo", &PiecewiseAffineMap::domain_lo)
        .def_property_readonly("domain_hi", &PiecewiseAffineMap::domain_hi)
        .def_property_readonly("min_expansion", &PiecewiseAffineMap::min_expansion)
        .def_property_readonly("expanding", &PiecewiseAffineMap::expanding)
        .def_property_readonly("branches", &PiecewiseAffineMap::branches)
        .def("breakpoints", &PiecewiseAffineMap::breakpoints)
        .def("eval", &PiecewiseAffineMap::eval, py::arg("x"),
             py::arg("side") = Side::right)
        .def("to_json", [](const PiecewiseAffineMap& f) { return map_to_json(f); });

    py::class_<Point2>(m, "Point2")
        .def(py::init<double, double>())
        .def_readonly("x", &Point2::x)
        .def_readonly("y", &Point2::y);

    py::class_<BoundaryPoint>(m, "BoundaryPoint")
        .def(py::init<double, int>(), py::arg("s"), py::arg("side") = 0)
        .def_readonly("s", &BoundaryPoint::s)
        .def_readonly("side", &BoundaryPoint::side);

    py::class_<Polygon>(m, "Polygon")
        .def_property_readonly("sides", &Polygon::sides)
        .def_property_readonly("perimeter", &Polygon::perimeter)
        .def_property_readonly("side_lengths", &Polygon::side_lengths)
        .def_property_readonly("cumulative_arclength", &Polygon::cumulative_arclength)
        .def_property_readonly("vertices",
                               [](const Polygon& P) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& v : P.vertices())
                                       out.push_back({v.x, v.y});
                                   return out;
                               })
        .def("to_json", [](const Polygon& P) { return polygon_to_json(P); });

    m.def("build_polygon", [](const std::vector<std::pair<double, double>>& pts) {
        std::vector<Point2> vertices;
        for (auto [x, y] : pts) vertices.push_back({x, y});
        return build_polygon(vertices);
    });
    m.def("polygon_from_json", &polygon_from_json);
    m.def("regular_polygon", &regular_polygon);
    m.def("kite_polygon", &kite_polygon);
    m.def("slap_project",
          [](const Polygon& P, double s) { return P.boundary_point(s); });
    m.def("slap_project", [](const Polygon& P, const BoundaryPoint& p) {
        return slap_project(P, p);
    });
    m.def("has_parallel_facing", &has_parallel_facing);
    m.def("extract_slap_map", &extract_slap_map);

    m.def("centrally_symmetric_map", &centrally_symmetric_map);
    m.def("m_of_slope", &m_of_slope);
    m.def("m_of_polygon", &m_of_polygon);
    m.def("renormalization_tower", [](double a) {
        LorenzAnalysis t = renormalization_tower(a);
        return py::make_tuple(t.m, t.intervals);
    });
    m.def("predicted_mixing_components", &predicted_mixing_components);

    m.def("reduced_slap", [](int d) { return reduced_slap(d).map; });
    m.def("alpha_constants", [](int d) { return alpha_constants(d).constants; });
    m.def("predict_acips", &predict_acips);
    m.def("pentagon_constants", []() {
        PentagonConstants c = pentagon_constants();
        return py::make_tuple(c.e, c.b, c.J);
    });

    m.def("triangle_from_angles", &triangle_from_angles, py::arg("a1"), py::arg("a2"),
          py::arg("scale") = 1.0);

    py::class_<ErgodicComponent>(m, "ErgodicComponent")
        .def_readonly("support", &ErgodicComponent::support)
        .def_readonly("period", &ErgodicComponent::period)
        .def_readonly("density", &ErgodicComponent::density);

    py::class_<ErgodicReport>(m, "ErgodicReport")
        .def_readonly("bin_count", &ErgodicReport::bin_count)
        .def_readonly("components", &ErgodicReport::components)
        .def_readonly("refinement_stable", &ErgodicReport::refinement_stable)
        .def("to_json", [](const ErgodicReport& r) { return report_to_json(r); });

    m.def(
        "analyze",
        [](const PiecewiseAffineMap& f, int n, bool density) {
            AnalyzeOptions opts;
            opts.compute_density = density;
            return analyze(f, n, opts);
        },
        py::arg("map"), py::arg("bins"), py::arg("density") = true);

    m.def("newton_solve", [](double alpha, double beta) {
        NewtonResult r = newton_solve(alpha, beta);
        return py::make_tuple(r.alpha, r.beta, r.residual);
    });
    m.def("pi_map", [](double alpha, double beta) {
        PiValue v = pi_map(alpha, beta);
        return py::make_tuple(v.plus, v.minus);
    });
    m.def("jacobian_det",
          [](double alpha, double beta) { return jacobian_pi(alpha, beta).det(); });

    m.def("nonergodic_polygon", &nonergodic_polygon, py::arg("n"),
          py::arg("apex_angle") = 2.2);
}
