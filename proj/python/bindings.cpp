#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmc/classify.hpp"
#include "cmc/integrate.hpp"
#include "cmc/model.hpp"
#include "cmc/shoot.hpp"
#include "cmc/stability.hpp"

namespace py = pybind11;
using namespace cmc;

namespace {

StartSpec start_from_kwargs(const std::string& kind, double a, double b, double c) {
    if (kind == "y-axis") return YAxisStart{a};
    if (kind == "x-axis-south") return XAxisSouthStart{a};
    if (kind == "x-axis-north") return XAxisNorthStart{a};
    if (kind == "interior") return CurveState{0.0, a, b, c};
    throw std::invalid_argument("unknown start kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(cmcinv, mod) {
    mod.doc() =
        "O(n) x O(m)-invariant constant mean curvature hypersurfaces of R^n x S^m: "
        "generating-curve integration, classification, shooting, and stability";

    py::class_<GeometryParams>(mod, "GeometryParams")
        .def(py::init<int, int, double>(), py::arg("n"), py::arg("m"), py::arg("h"))
        .def_readonly("n", &GeometryParams::n)
        .def_readonly("m", &GeometryParams::m)
        .def_readonly("h", &GeometryParams::h);

    py::class_<CurveState>(mod, "CurveState")
        .def(py::init([](double s, double x, double y, double sigma) {
                 return CurveState{s, x, y, sigma};
             }),
             py::arg("s"), py::arg("x"), py::arg("y"), py::arg("sigma"))
        .def_readonly("s", &CurveState::s)
        .def_readonly("x", &CurveState::x)
        .def_readonly("y", &CurveState::y)
        .def_readonly("sigma", &CurveState::sigma);

    py::class_<Derivative>(mod, "Derivative")
        .def_readonly("dx", &Derivative::dx)
        .def_readonly("dy", &Derivative::dy)
        .def_readonly("dsigma", &Derivative::dsigma);

    py::class_<IntegrationControls>(mod, "IntegrationControls")
        .def(py::init<>())
        .def_readwrite("rtol", &IntegrationControls::rtol)
        .def_readwrite("atol", &IntegrationControls::atol)
        .def_readwrite("max_arclength", &IntegrationControls::max_arclength)
        .def_readwrite("max_steps", &IntegrationControls::max_steps)
        .def_readwrite("axis_margin", &IntegrationControls::axis_margin)
        .def_readwrite("event_refine_tol", &IntegrationControls::event_refine_tol)
        .def_readwrite("angle_tol", &IntegrationControls::angle_tol);

    py::enum_<EventKind>(mod, "EventKind")
        .value("YMax", EventKind::YMax)
        .value("YMin", EventKind::YMin)
        .value("VerticalTangent", EventKind::VerticalTangent)
        .value("XAxisContact", EventKind::XAxisContact)
        .value("YAxisContact", EventKind::YAxisContact)
        .value("NorthContact", EventKind::NorthContact);

    py::enum_<Termination>(mod, "Termination")
        .value("BudgetExhausted", Termination::BudgetExhausted)
        .value("AxisContact", Termination::AxisContact)
        .value("StepFailure", Termination::StepFailure)
        .value("EventHalt", Termination::EventHalt);

    py::class_<Event>(mod, "Event")
        .def_readonly("s", &Event::s)
        .def_readonly("kind", &Event::kind)
        .def_readonly("state", &Event::state)
        .def_readonly("orthogonal", &Event::orthogonal);

    py::class_<ProfileCurve>(mod, "ProfileCurve")
        .def_readonly("params", &ProfileCurve::params)
        .def_readonly("samples", &ProfileCurve::samples)
        .def_readonly("rates", &ProfileCurve::rates)
        .def_readonly("events", &ProfileCurve::events)
        .def_readonly("termination", &ProfileCurve::termination)
        .def_readonly("contact_orthogonal", &ProfileCurve::contact_orthogonal)
        .def("arclength", &ProfileCurve::arclength);

    py::enum_<Topology>(mod, "Topology")
        .value("SliceProduct", Topology::SliceProduct)
        .value("TubeProduct", Topology::TubeProduct)
        .value("ImmersedCylinder", Topology::ImmersedCylinder)
        .value("HyperSphere", Topology::HyperSphere)
        .value("ConstantSlice", Topology::ConstantSlice)
        .value("ConstantCylinder", Topology::ConstantCylinder)
        .value("Undetermined", Topology::Undetermined);

    py::class_<Extremum>(mod, "Extremum")
        .def_readonly("s", &Extremum::s)
        .def_readonly("x", &Extremum::x)
        .def_readonly("y", &Extremum::y)
        .def_readonly("kind", &Extremum::kind);

    py::class_<Intersection>(mod, "Intersection")
        .def_readonly("s1", &Intersection::s1)
        .def_readonly("s2", &Intersection::s2)
        .def_readonly("x", &Intersection::x)
        .def_readonly("y", &Intersection::y)
        .def_readonly("degenerate", &Intersection::degenerate);

    py::class_<ClassificationResult>(mod, "ClassificationResult")
        .def_readonly("topology", &ClassificationResult::topology)
        .def_readonly("embedded", &ClassificationResult::embedded)
        .def_readonly("case_tag", &ClassificationResult::case_tag)
        .def_readonly("extrema", &ClassificationResult::extrema)
        .def_readonly("intersection", &ClassificationResult::intersection)
        .def_readonly("oscillation_certified",
                      &ClassificationResult::oscillation_certified)
        .def_readonly("evidence_horizon", &ClassificationResult::evidence_horizon)
        .def_readonly("note", &ClassificationResult::note);

    py::enum_<ShootTag>(mod, "ShootTag")
        .value("Undershoot", ShootTag::Undershoot)
        .value("Overshoot", ShootTag::Overshoot)
        .value("Sphere", ShootTag::Sphere);

    py::class_<ShootOutcome>(mod, "ShootOutcome")
        .def_readonly("tag", &ShootOutcome::tag)
        .def_readonly("s_terminal", &ShootOutcome::s_terminal)
        .def_readonly("state_terminal", &ShootOutcome::state_terminal);

    py::class_<IndexFormReport>(mod, "IndexFormReport")
        .def_readonly("Q", &IndexFormReport::Q)
        .def_readonly("Q_jacobi", &IndexFormReport::Q_jacobi)
        .def_readonly("mass", &IndexFormReport::mass)
        .def_readonly("weighted_length", &IndexFormReport::weighted_length)
        .def_readonly("constants_included", &IndexFormReport::constants_included);

    py::class_<CriteriaReport>(mod, "CriteriaReport")
        .def_readonly("slice_unstable", &CriteriaReport::slice_unstable)
        .def_readonly("cylinder_unstable", &CriteriaReport::cylinder_unstable)
        .def_readonly("threshold_h", &CriteriaReport::threshold_h)
        .def_readonly("cylinder_radius", &CriteriaReport::cylinder_radius)
        .def_readonly("threshold_radius", &CriteriaReport::threshold_radius)
        .def_readonly("cylinder_unstable_by_radius",
                      &CriteriaReport::cylinder_unstable_by_radius);

    py::class_<LinearizedSolution>(mod, "LinearizedSolution")
        .def_readonly("x", &LinearizedSolution::x)
        .def_readonly("w", &LinearizedSolution::w)
        .def_readonly("dw", &LinearizedSolution::dw)
        .def_readonly("zeros", &LinearizedSolution::zeros);

    mod.def("slice_height", &slice_height, py::arg("params"));
    mod.def("sphere_volume", &sphere_volume, py::arg("k"));
    mod.def(
        "vector_field",
        [](const CurveState& st, const GeometryParams& p) { return vector_field(st, p); },
        py::arg("state"), py::arg("params"));
    mod.def("pointwise_mean_curvature", &pointwise_mean_curvature, py::arg("state"),
            py::arg("dsigma"), py::arg("params"));

    mod.def(
        "integrate",
        [](const std::string& kind, double a, double b, double c,
           const GeometryParams& params, const IntegrationControls& controls) {
            return integrate(start_from_kwargs(kind, a, b, c), params, controls);
        },
        py::arg("kind"), py::arg("a"), py::arg("b") = 0.0, py::arg("c") = 0.0,
        py::arg("params") = GeometryParams(2, 2, 0.0),
        py::arg("controls") = IntegrationControls{},
        "Integrate a generating curve; kind is one of 'y-axis', 'x-axis-south', "
        "'x-axis-north' (a = height/radius) or 'interior' (a,b,c = x,y,sigma).",
        py::call_guard<py::gil_scoped_release>());

    mod.def("classify", &classify, py::arg("curve"), py::arg("params"),
            py::call_guard<py::gil_scoped_release>());
    mod.def("detect_self_intersection", &detect_self_intersection, py::arg("curve"),
            py::arg("tol") = 1e-9, py::call_guard<py::gil_scoped_release>());
    mod.def("shoot_once", &shoot_once, py::arg("A"), py::arg("params"),
            py::arg("controls") = IntegrationControls{},
            py::call_guard<py::gil_scoped_release>());
    mod.def(
        "find_sphere_height",
        [](const GeometryParams& params, std::pair<double, double> bracket, double tol,
           const IntegrationControls& controls) {
            SphereResult res = find_sphere_height(params, bracket, tol, controls);
            return py::make_tuple(res.A_star, std::move(res.curve));
        },
        py::arg("params"), py::arg("bracket"), py::arg("tol") = 1e-4,
        py::arg("controls") = IntegrationControls{});
    mod.def("instability_certificate", &instability_certificate, py::arg("curve"),
            py::arg("params"), py::call_guard<py::gil_scoped_release>());
    mod.def("cylinder_slice_criteria", &cylinder_slice_criteria, py::arg("params"));
    mod.def("linearized_solution", &linearized_solution, py::arg("params"),
            py::arg("x_max"), py::call_guard<py::gil_scoped_release>());
}
