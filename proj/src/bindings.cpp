// Python bindings for the main library operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gbc/acceptance.hpp"
#include "gbc/clifford.hpp"
#include "gbc/curvature.hpp"
#include "gbc/expression.hpp"
#include "gbc/geometry.hpp"
#include "gbc/geometry_file.hpp"
#include "gbc/heat.hpp"
#include "gbc/mc.hpp"
#include "gbc/pfaffian.hpp"
#include "gbc/weitzenbock.hpp"

#include <sstream>

namespace py = pybind11;
using namespace gbc;
using geom::Vec;

namespace {

geom::ConnectionKind kind_of(const std::string& kind) {
    if (kind == "full") return geom::ConnectionKind::Full;
    if (kind == "lc") return geom::ConnectionKind::LeviCivita;
    if (kind == "3b") return geom::ConnectionKind::ThreeB;
    throw std::invalid_argument("connection kind must be 'full', 'lc' or '3b'");
}

}  // namespace

PYBIND11_MODULE(_pygbc, m) {
    m.doc() =
        "Numerical verification of the local Gauss-Bonnet-Chern limit for "
        "metric-compatible connections";

    py::class_<geom::GeometrySpec>(m, "Geometry")
        .def_property_readonly("name", [](const geom::GeometrySpec& g) { return g.name; })
        .def_property_readonly("dim", &geom::GeometrySpec::dim)
        .def("metric", [](const geom::GeometrySpec& g, const Vec& x) {
            return g.metric.value(x);
        })
        .def("has_torsion", [](const geom::GeometrySpec& g) {
            return !g.contorsion.is_zero();
        })
        .def("__repr__", [](const geom::GeometrySpec& g) {
            return "<Geometry '" + g.name + "' dim=" + std::to_string(g.dim()) + ">";
        });

    m.def("preset_names", &geom::preset_names);
    m.def("load_geometry", &cli::load_geometry, py::arg("source"),
          py::arg("amplitude") = 0.3,
          "Load a preset by name or a geometry spec file by path");

    // expressions
    py::class_<expr::Expression>(m, "Expression")
        .def("evaluate", &expr::Expression::evaluate)
        .def("print", &expr::Expression::print)
        .def_property_readonly("dim", &expr::Expression::dim);
    m.def("parse_expression", &expr::parse_expression, py::arg("text"), py::arg("dim"));

    // algebra
    m.def("pfaffian", [](const Eigen::MatrixXd& a) {
        return cliff::pfaffian(cliff::SkewMatrix::from_dense(a));
    });
    m.def("pfaffian_berezin", [](const Eigen::MatrixXd& a) {
        return cliff::pfaffian_berezin(cliff::SkewMatrix::from_dense(a));
    });

    // geometry
    m.def("euler_form",
          [](const geom::GeometrySpec& g, const Vec& x, const std::string& kind) {
              return geom::euler_form(g, x, kind_of(kind));
          },
          py::arg("geometry"), py::arg("x"), py::arg("kind") = "full");
    m.def("euler_characteristic",
          [](const geom::GeometrySpec& g, int points, const std::string& kind) {
              return geom::euler_characteristic(g, points, kind_of(kind));
          },
          py::arg("geometry"), py::arg("points") = 24, py::arg("kind") = "full");
    m.def("scalar_curvature", [](const geom::GeometrySpec& g, const Vec& x) {
        return geom::curvature(g, x, geom::ConnectionKind::LeviCivita).scalar;
    });
    m.def("normal_coordinate_slope",
          [](const geom::GeometrySpec& g, double radius, const std::string& kind) {
              return geom::normal_coordinate_check(g, radius, 4, 8, kind_of(kind)).slope;
          },
          py::arg("geometry"), py::arg("radius") = 0.2, py::arg("kind") = "full");

    // grid routes
    m.def("heat_profile",
          [](const geom::GeometrySpec& g, int n, std::vector<double> ts,
             const std::vector<std::vector<int>>& nodes, const std::string& kind) {
              auto grid = hodge::Grid::make(g.chart, n);
              auto op = hodge::assemble_dirac(g, grid, kind_of(kind), 1 << 20);
              std::vector<long> idx;
              for (const auto& iv : nodes) idx.push_back(grid.index(iv));
              auto prof = hodge::supertrace_profile(op, g, std::move(ts), idx, kind_of(kind));
              py::dict out;
              out["ts"] = prof.ts;
              out["density"] = prof.density;
              out["extrapolated"] = prof.extrapolated;
              out["reference"] = prof.reference;
              out["max_imag"] = prof.max_imag;
              return out;
          },
          py::arg("geometry"), py::arg("n"), py::arg("ts"), py::arg("nodes"),
          py::arg("kind") = "full");
    m.def("mckean_singer",
          [](const geom::GeometrySpec& g, int n, const std::vector<double>& ts) {
              auto grid = hodge::Grid::make(g.chart, n);
              auto op = hodge::assemble_dirac(g, grid);
              return hodge::mckean_singer(op, ts);
          },
          py::arg("geometry"), py::arg("n"), py::arg("ts"));
    m.def("weitzenbock_slope",
          [](const geom::GeometrySpec& g, const std::vector<int>& sizes) {
              return hodge::weitzenbock_check(g, sizes).slope;
          },
          py::arg("geometry"), py::arg("sizes"));

    // Monte Carlo routes
    m.def("heat_diag_mc",
          [](const geom::GeometrySpec& g, double t, const Vec& x, double bandwidth,
             long n, unsigned long long seed) {
              sde::SdeSpec spec;
              spec.geometry = g;
              const auto est = sde::heat_diag_mc(spec, t, x, bandwidth, n, seed);
              py::dict out;
              out["value"] = est.value;
              out["stderr"] = est.stderr_re;
              out["supertrace"] = est.supertrace;
              out["supertrace_stderr"] = est.supertrace_stderr;
              out["max_imag"] = est.max_imag;
              out["excluded"] = est.excluded;
              return out;
          },
          py::arg("geometry"), py::arg("t"), py::arg("x"), py::arg("bandwidth"),
          py::arg("n"), py::arg("seed"));
    m.def("epsilon_order_study",
          [](const geom::GeometrySpec& g, const Vec& x, std::vector<double> eps, long n,
             unsigned long long seed) {
              sde::SdeSpec spec;
              spec.geometry = g;
              const auto study = sde::epsilon_order_study(spec, x, std::move(eps), n, seed);
              py::dict out;
              out["epsilons"] = study.epsilons;
              out["x_residuals"] = study.x_residuals;
              out["e_residuals"] = study.e_residuals;
              out["x_slope"] = study.x_slope;
              out["e_slope"] = study.e_slope;
              return out;
          },
          py::arg("geometry"), py::arg("x"), py::arg("epsilons"), py::arg("n"),
          py::arg("seed"));
    m.def("ladder_check_mc",
          [](const geom::GeometrySpec& g, const Vec& x, double eps, long n,
             unsigned long long seed) {
              sde::SdeSpec spec;
              spec.geometry = g;
              const auto rep = sde::ladder_check_mc(spec, x, eps, n, seed);
              py::dict out;
              out["mean"] = rep.mean;
              out["stderr"] = rep.stderr_;
              out["reference"] = rep.reference;
              out["max_imag"] = rep.max_imag;
              return out;
          },
          py::arg("geometry"), py::arg("x"), py::arg("eps"), py::arg("n"),
          py::arg("seed"));

    m.def("run_acceptance", []() {
        std::ostringstream os;
        const int failures = run_acceptance(os);
        return py::make_tuple(failures, os.str());
    });
}
