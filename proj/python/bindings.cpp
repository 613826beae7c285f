#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "ideal/report.hpp"

namespace py = pybind11;
using namespace ideal;

namespace {

py::object to_py(const json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

Triangulation load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_triangulation(buf.str());
}

EquationSystem system_for_mode(const Triangulation& tri, const std::string& mode,
                               const SolveOptions& opts) {
    if (mode == "explicit") return EquationSystem::explicit_mode(tri);
    if (mode == "derived") return derived_mode_consistent(tri, opts);
    return tri.explicit_equations.empty() ? derived_mode_consistent(tri, opts)
                                          : EquationSystem::explicit_mode(tri);
}

ShapeAssignment default_start(const Triangulation& tri, const EquationSystem& sys) {
    return tri.seed.empty() ? sys.default_seed() : ShapeAssignment{tri.seed};
}

}  // namespace

PYBIND11_MODULE(idealpoints, m) {
    m.doc() = "ideal triangulation deformations and character-variety checks";

    py::register_exception<ParseError>(m, "FileParseError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    m.def(
        "validate", [](const std::string& path) { return to_py(validate_result(load(path))); },
        py::arg("path"), "Parse a triangulation file and summarize edge classes and equations.");

    m.def(
        "solve",
        [](const std::string& path, const std::string& mode, double tol) {
            Triangulation tri = load(path);
            SolveOptions opts;
            if (tol > 0) opts.newton_tol = tol;
            EquationSystem sys = system_for_mode(tri, mode, opts);
            ShapeAssignment sol = solve_complete(sys, default_start(tri, sys), opts);
            return to_py(solve_result(sys, sol));
        },
        py::arg("path"), py::arg("mode") = "auto", py::arg("tol") = -1.0,
        "Solve for the complete structure.");

    m.def(
        "fill",
        [](const std::string& path, const std::string& curve, int n, const std::string& mode) {
            Triangulation tri = load(path);
            SolveOptions opts;
            EquationSystem sys = system_for_mode(tri, mode, opts);
            if (!sys.curves.count(curve)) throw ParseError(0, "no curve named '" + curve + "'");
            ShapeAssignment complete = solve_complete(sys, default_start(tri, sys), opts);
            return to_py(fill_result(continue_filling(sys, curve, n, complete, opts)));
        },
        py::arg("path"), py::arg("curve"), py::arg("n"), py::arg("mode") = "auto",
        "Path continuation toward the 1/n orbifold filling of a curve.");

    m.def(
        "tangent",
        [](const std::string& path, const std::vector<Complex>& at, const std::string& mode) {
            Triangulation tri = load(path);
            SolveOptions opts;
            EquationSystem sys = system_for_mode(tri, mode, opts);
            ShapeAssignment point{at};
            return to_py(tangent_result(sys, point, opts.solver_floor));
        },
        py::arg("path"), py::arg("at"), py::arg("mode") = "auto",
        "Tangent nullity and singular values of the edge system at a point.");

    m.def(
        "ptb_report", [](Complex gamma) { return to_py(ptb_result(gamma)); },
        py::arg("gamma") = Complex(1.0, 1.0),
        "Character-variety verification report for the punctured-torus bundle.");

    m.def(
        "trace_reduce",
        [](const std::string& word) { return trace_reduce(Word::from_string(word)).to_string(); },
        py::arg("word"),
        "Trace of a word in two generators as a polynomial in the three basic traces.");

    m.def(
        "trace_eval",
        [](const std::string& word, Complex alpha, Complex beta, Complex gamma) {
            return trace_reduce(Word::from_string(word)).eval(alpha, beta, gamma);
        },
        py::arg("word"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

    m.def("bloch_wigner", &bloch_wigner, py::arg("z"), "Bloch-Wigner dilogarithm D(z).");

    m.def(
        "volume", [](const std::vector<Complex>& shapes) { return volume(ShapeAssignment{shapes}); },
        py::arg("shapes"), "Sum of D(z_i) over a shape vector.");
}
