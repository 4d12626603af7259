#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setflow/comparison.hpp"
#include "setflow/flow.hpp"
#include "setflow/functionals.hpp"
#include "setflow/lab.hpp"

namespace py = pybind11;
using namespace setflow;

PYBIND11_MODULE(_setflow, m) {
    m.doc() = "Linear set differential equations on planar convex bodies: "
              "support-function algebra, shape metrics and comparison systems";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<Interval1D>(m, "Interval1D")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Interval1D::lo)
        .def_readonly("hi", &Interval1D::hi)
        .def("diameter", &Interval1D::diameter)
        .def("__repr__", [](const Interval1D& i) {
            return "Interval1D(" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + ")";
        });

    py::class_<LinearOp2>(m, "LinearOp2")
        .def_static("identity", &LinearOp2::identity)
        .def_static("rotation", &LinearOp2::rotation, py::arg("angle"))
        .def_static("reflection", &LinearOp2::reflection, py::arg("axis_angle"))
        .def_static("general", &LinearOp2::general, py::arg("entries"))
        .def_property_readonly("entries", &LinearOp2::entries)
        .def_property_readonly("angle", &LinearOp2::angle)
        .def("is_orthogonal", &LinearOp2::is_orthogonal, py::arg("tol") = 1e-12)
        .def("det", &LinearOp2::det)
        .def("power", &LinearOp2::power, py::arg("k"));

    py::class_<Body2D>(m, "Body2D")
        .def_static("disk", &Body2D::disk, py::arg("radius"),
                    py::arg("degree") = kDefaultDegree, py::arg("grid_m") = kDefaultGrid)
        .def_static("point", &Body2D::point, py::arg("position"),
                    py::arg("degree") = kDefaultDegree, py::arg("grid_m") = kDefaultGrid)
        .def_static("from_fourier", &Body2D::from_fourier, py::arg("h0"),
                    py::arg("modes"), py::arg("grid_m") = kDefaultGrid)
        .def_static(
            "from_polygon",
            [](const std::vector<std::pair<double, double>>& pts, int degree, int grid_m) {
                std::vector<Vec2> v;
                v.reserve(pts.size());
                for (const auto& p : pts) v.emplace_back(p.first, p.second);
                return Body2D::from_polygon(v, degree, grid_m);
            },
            py::arg("vertices"), py::arg("degree") = kDefaultDegree,
            py::arg("grid_m") = kDefaultGrid)
        .def_property_readonly("h0", &Body2D::h0)
        .def_property_readonly("degree", &Body2D::degree)
        .def_property_readonly("grid_m", &Body2D::grid_m)
        .def_property_readonly("modes", &Body2D::modes)
        .def_property_readonly("is_polygonal", &Body2D::is_polygonal)
        .def_property_readonly("projection_residual", &Body2D::projection_residual)
        .def("mode", &Body2D::mode, py::arg("p"))
        .def("support", &Body2D::support, py::arg("theta"))
        .def("fourier_support", &Body2D::fourier_support, py::arg("theta"))
        .def("diameter", &Body2D::diameter)
        .def("steiner_point", &Body2D::steiner_point)
        .def("is_convex", &Body2D::is_convex);

    m.def("minkowski_sum", &minkowski_sum, py::arg("x"), py::arg("y"));
    m.def("apply_op", &apply_op, py::arg("a"), py::arg("x"));
    m.def("scale_translate", &scale_translate, py::arg("x"), py::arg("lam"),
          py::arg("b"));
    m.def("random_body", &random_body, py::arg("seed"),
          py::arg("degree") = kDefaultDegree, py::arg("roughness") = 0.1,
          py::arg("grid_m") = kDefaultGrid);

    py::class_<RadiiReport>(m, "RadiiReport")
        .def_readonly("inradius", &RadiiReport::inradius)
        .def_readonly("circumradius", &RadiiReport::circumradius)
        .def_readonly("incenter", &RadiiReport::incenter)
        .def_readonly("circumcenter", &RadiiReport::circumcenter);

    py::class_<DeficitReport>(m, "DeficitReport")
        .def_readonly("V1", &DeficitReport::V1)
        .def_readonly("VX", &DeficitReport::VX)
        .def_readonly("VY", &DeficitReport::VY)
        .def_readonly("delta", &DeficitReport::delta);

    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("rho", &MetricReport::rho)
        .def_readonly("witness_translation", &MetricReport::witness_translation);

    py::class_<ShapeRep>(m, "ShapeRep")
        .def_readonly("body", &ShapeRep::body)
        .def_readonly("source_volume", &ShapeRep::source_volume);

    m.def("area", &area, py::arg("x"));
    m.def("mixed_area", &mixed_area, py::arg("x"), py::arg("y"));
    m.def("deficit", &deficit, py::arg("x"), py::arg("y"));
    m.def("inradius_circumradius", &inradius_circumradius, py::arg("x"));
    m.def("hausdorff", &hausdorff, py::arg("x"), py::arg("y"));
    m.def("normalize", &normalize, py::arg("x"));
    m.def("shape_metric", &shape_metric, py::arg("x"), py::arg("y"));

    py::class_<Trajectory> traj(m, "Trajectory");
    py::enum_<Trajectory::Integrator>(traj, "Integrator")
        .value("spectral", Trajectory::Integrator::spectral)
        .value("rk4", Trajectory::Integrator::rk4)
        .value("picard", Trajectory::Integrator::picard);
    traj.def_readonly("times", &Trajectory::times)
        .def_readonly("bodies", &Trajectory::bodies)
        .def_readonly("integrator", &Trajectory::integrator);

    m.def("solve_spectral",
          py::overload_cast<const Body2D&, double, double>(&solve_spectral),
          py::arg("x0"), py::arg("alpha"), py::arg("t"));
    m.def("solve_spectral_trajectory", &solve_spectral_trajectory, py::arg("x0"),
          py::arg("alpha"), py::arg("times"));
    m.def("solve_rk4", &solve_rk4, py::arg("x0"), py::arg("a"), py::arg("t_grid"),
          py::arg("step") = 1.0 / 256.0);

    py::class_<PicardConfig>(m, "PicardConfig")
        .def(py::init([](double horizon, int m_max, int steps) {
                 return PicardConfig{horizon, m_max, steps};
             }),
             py::arg("horizon"), py::arg("m_max") = 20,
             py::arg("quadrature_steps") = 1024)
        .def_readwrite("horizon", &PicardConfig::horizon)
        .def_readwrite("m_max", &PicardConfig::m_max)
        .def_readwrite("quadrature_steps", &PicardConfig::quadrature_steps);
    m.def("solve_picard", &solve_picard, py::arg("x0"), py::arg("a"), py::arg("cfg"));

    m.def("solve_reflection_1d", &solve_reflection_1d, py::arg("x0"), py::arg("t"));

    py::class_<Conjugation>(m, "Conjugation")
        .def_readonly("T", &Conjugation::T)
        .def_readonly("A1", &Conjugation::A1);
    m.def("conjugate_to_orthogonal", &conjugate_to_orthogonal, py::arg("a"));

    py::class_<ComparisonSystem>(m, "ComparisonSystem")
        .def_readonly("m", &ComparisonSystem::m)
        .def_readonly("omega", &ComparisonSystem::omega);
    m.def("build_omega", &build_omega, py::arg("m"));
    m.def("spectrum", &spectrum, py::arg("sys"));
    m.def("spectrum_formula", &spectrum_formula, py::arg("m"));
    m.def("expm", &expm, py::arg("a"));
    m.def("evolve_xi", &evolve_xi, py::arg("sys"), py::arg("xi0"), py::arg("t"));
    m.def("closed_form_S", &closed_form_S, py::arg("m"), py::arg("s0"),
          py::arg("cross"), py::arg("t"));
    m.def("asymptotic_S", &asymptotic_S, py::arg("m"), py::arg("s0"), py::arg("cross"));

    py::class_<XiData>(m, "XiData")
        .def_readonly("s0", &XiData::s0)
        .def_readonly("cross", &XiData::cross)
        .def_readonly("xi0", &XiData::xi0);
    m.def("xi_from_bodies", &xi_from_bodies, py::arg("x0"), py::arg("x0_star"),
          py::arg("a"), py::arg("m"));

    py::class_<Membership>(m, "Membership")
        .def_readonly("member", &Membership::member)
        .def_readonly("residual", &Membership::residual);
    m.def("rotational_sum", &rotational_sum, py::arg("x0"), py::arg("a"), py::arg("m"));
    m.def("membership_in_M", &membership_in_M, py::arg("x0"), py::arg("x0_star"),
          py::arg("a"), py::arg("m"), py::arg("tol") = 1e-8);
    m.def("fourier_condition_check", &fourier_condition_check, py::arg("x0"),
          py::arg("x0_star"), py::arg("m"));

    py::class_<PerturbationSpec>(m, "PerturbationSpec")
        .def(py::init([](std::vector<int> modes, std::vector<double> amplitudes,
                         std::optional<std::uint64_t> seed) {
                 return PerturbationSpec{std::move(modes), std::move(amplitudes), seed};
             }),
             py::arg("modes"), py::arg("amplitudes"),
             py::arg("seed") = std::nullopt);
    m.def("perturb", &perturb, py::arg("base"), py::arg("spec"));
}
