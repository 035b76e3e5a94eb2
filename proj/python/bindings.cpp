#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hslab/asymptotics.hpp"
#include "hslab/curve.hpp"
#include "hslab/errors.hpp"
#include "hslab/field.hpp"
#include "hslab/params.hpp"
#include "hslab/phase_field.hpp"
#include "hslab/vortex_sheet.hpp"

namespace py = pybind11;
using namespace hslab;

PYBIND11_MODULE(_hslab, m) {
    m.doc() = "Hele-Shaw interface laboratory: phase-field and vortex-sheet solvers";

    py::register_exception<Error>(m, "HslabError", PyExc_RuntimeError);

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_readwrite("mu1", &PhysicalParams::mu1)
        .def_readwrite("mu2", &PhysicalParams::mu2)
        .def_readwrite("rho1", &PhysicalParams::rho1)
        .def_readwrite("rho2", &PhysicalParams::rho2)
        .def_readwrite("b", &PhysicalParams::b)
        .def_readwrite("g", &PhysicalParams::g)
        .def_readwrite("a", &PhysicalParams::a)
        .def_readwrite("U_inf", &PhysicalParams::U_inf)
        .def_readwrite("W", &PhysicalParams::W)
        .def_readwrite("ell", &PhysicalParams::ell)
        .def_readwrite("K", &PhysicalParams::K)
        .def_readwrite("alpha_kin", &PhysicalParams::alpha_kin)
        .def_readwrite("lambda_", &PhysicalParams::lambda);
    m.def("compute_atwood", &compute_atwood);
    m.def("compute_B", &compute_B);
    m.def("characteristic_speed", &characteristic_speed);
    m.def("time_scale", &time_scale);
    m.def("matching_constant", &matching_constant);

    py::enum_<Topology>(m, "Topology")
        .value("Closed", Topology::Closed)
        .value("PeriodicX", Topology::PeriodicX)
        .value("PeriodicY", Topology::PeriodicY);

    py::class_<InterfaceCurve>(m, "InterfaceCurve")
        .def(py::init<std::vector<Vec2>, Topology, double>(), py::arg("markers"),
             py::arg("topology"), py::arg("period") = 0.0)
        .def_property_readonly("markers", &InterfaceCurve::markers)
        .def_property_readonly("topology", &InterfaceCurve::topology)
        .def_property_readonly("period", &InterfaceCurve::period)
        .def("__len__", &InterfaceCurve::size)
        .def("total_arclength", &InterfaceCurve::total_arclength)
        .def("enclosed_area", &InterfaceCurve::enclosed_area);
    m.def("make_circle", &make_circle, py::arg("center"), py::arg("radius"), py::arg("n"),
          py::arg("counterclockwise") = true);
    m.def(
        "make_periodic_graph",
        [](double period, std::size_t n, const std::function<double(double)>& h, double x0) {
            return make_periodic_graph(period, n, h, x0);
        },
        py::arg("period"), py::arg("n"), py::arg("height"), py::arg("x0") = 0.0);
    m.def("curvature", &curvature);
    m.def("resample_uniform", &resample_uniform);
    m.def("hausdorff_distance", &hausdorff_distance);

    py::enum_<BoundaryY>(m, "BoundaryY")
        .value("Periodic", BoundaryY::Periodic)
        .value("FixedValue", BoundaryY::FixedValue);

    py::class_<ScalarField2D>(m, "ScalarField2D")
        .def(py::init<std::size_t, std::size_t, double, double, BoundaryY>(), py::arg("nx"),
             py::arg("ny"), py::arg("Lx"), py::arg("Ly"),
             py::arg("boundary") = BoundaryY::Periodic)
        .def_property_readonly("nx", &ScalarField2D::nx)
        .def_property_readonly("ny", &ScalarField2D::ny)
        .def_property_readonly("Lx", &ScalarField2D::Lx)
        .def_property_readonly("Ly", &ScalarField2D::Ly)
        .def("fill", &ScalarField2D::fill)
        .def("sample", &ScalarField2D::sample)
        .def("values", [](const ScalarField2D& f) { return f.values(); });

    auto pf = m.def_submodule("phase_field");
    py::class_<phase_field::PhaseFieldState>(pf, "PhaseFieldState")
        .def_readonly("u", &phase_field::PhaseFieldState::u)
        .def_readonly("phi", &phase_field::PhaseFieldState::phi)
        .def_readonly("eps", &phase_field::PhaseFieldState::eps)
        .def_readonly("c2sq", &phase_field::PhaseFieldState::c2sq)
        .def_readonly("t", &phase_field::PhaseFieldState::t);
    pf.def("make_phase_field_state", &phase_field::make_phase_field_state, py::arg("u"),
           py::arg("phi"), py::arg("eps"), py::arg("c2sq"));
    pf.def(
        "step_phase_field",
        [](const phase_field::PhaseFieldState& s, double dt, const PhysicalParams& p) {
            return phase_field::step_phase_field(s, dt, p);
        },
        py::arg("state"), py::arg("dt"), py::arg("params"));
    pf.def("stable_dt", &phase_field::stable_dt);
    pf.def("conserved_quantity", &phase_field::conserved_quantity);
    pf.def("extract_interface", &phase_field::extract_interface);
    pf.def("fill_tanh_graph", &phase_field::fill_tanh_graph, py::arg("phi"), py::arg("y0"),
           py::arg("amp"), py::arg("mode"), py::arg("eps"));
    pf.def("fill_tanh_disk", &phase_field::fill_tanh_disk, py::arg("phi"), py::arg("center"),
           py::arg("radius"), py::arg("eps"), py::arg("positive_inside") = true);

    auto vs = m.def_submodule("vortex_sheet");
    py::class_<vortex_sheet::SheetState>(vs, "SheetState")
        .def_readonly("curve", &vortex_sheet::SheetState::curve)
        .def_readonly("gamma", &vortex_sheet::SheetState::gamma)
        .def_readonly("t", &vortex_sheet::SheetState::t)
        .def_readonly("A", &vortex_sheet::SheetState::A)
        .def_readonly("B", &vortex_sheet::SheetState::B)
        .def_readonly("drive_sign", &vortex_sheet::SheetState::drive_sign);
    vs.def("make_sheet_state", &vortex_sheet::make_sheet_state, py::arg("curve"), py::arg("A"),
           py::arg("B"), py::arg("drive_sign") = 1.0, py::arg("blob_delta") = 0.0);
    vs.def(
        "advance_interface",
        [](const vortex_sheet::SheetState& s, double dt) {
            return vortex_sheet::advance_interface(s, dt);
        },
        py::arg("state"), py::arg("dt"));
    vs.def("suggested_dt", &vortex_sheet::suggested_dt);
    vs.def(
        "solve_sheet_strength",
        [](vortex_sheet::SheetState& s) {
            const auto r = vortex_sheet::solve_sheet_strength(s);
            return py::make_tuple(r.iterations, r.residual);
        },
        py::arg("state"));
    vs.def(
        "birkhoff_velocity",
        [](const vortex_sheet::SheetState& s) { return vortex_sheet::birkhoff_velocity(s); },
        py::arg("state"));

    auto as = m.def_submodule("asymptotics");
    py::class_<asymptotics::ProfileSolution>(as, "ProfileSolution")
        .def_readonly("rho", &asymptotics::ProfileSolution::rho)
        .def_readonly("phi", &asymptotics::ProfileSolution::phi)
        .def_readonly("dphi", &asymptotics::ProfileSolution::dphi)
        .def("eval", &asymptotics::ProfileSolution::eval);
    as.def("solve_profile_ode", &asymptotics::solve_profile_ode, py::arg("half_width"),
           py::arg("n"));
    as.def("surface_tension_integral", &asymptotics::surface_tension_integral);
    as.def("dispersion_rate", &asymptotics::dispersion_rate, py::arg("k"), py::arg("B"),
           py::arg("drive_sign"));
    as.def(
        "linear_growth_oracle",
        [](double k, double A, double B, double drive_sign) {
            return asymptotics::linear_growth_oracle(k, A, B, drive_sign);
        },
        py::arg("k"), py::arg("A"), py::arg("B"), py::arg("drive_sign"));
}
