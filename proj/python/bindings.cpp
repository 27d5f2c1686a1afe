#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causticlab/errors.hpp"
#include "causticlab/harness.hpp"

namespace py = pybind11;
using namespace causticlab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Airy-beam fields by paraxial, ray and canonical-integral methods";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("airy_ai", &airy_ai, py::arg("z"));
    m.def("airy_ai_derivs", &airy_ai_derivs, py::arg("z"), py::arg("n"));

    py::class_<BeamParams>(m, "BeamParams")
        .def(py::init<>())
        .def_static("from_tilde", &BeamParams::from_tilde, py::arg("k_beta_tilde"), py::arg("alpha_tilde") = 0.0,
                    py::arg("beta_tilde") = 1.0, py::arg("c") = 1.0)
        .def_readwrite("k", &BeamParams::k)
        .def_readwrite("beta_x", &BeamParams::beta_x)
        .def_readwrite("beta_y", &BeamParams::beta_y)
        .def_readwrite("alpha_x", &BeamParams::alpha_x)
        .def_readwrite("alpha_y", &BeamParams::alpha_y)
        .def_readwrite("c", &BeamParams::c)
        .def("beta_tilde", &BeamParams::beta_tilde)
        .def("alpha_tilde", &BeamParams::alpha_tilde)
        .def("k_beta_tilde", &BeamParams::k_beta_tilde);

    auto tilde = [](const BeamParams& p, double xt, double yt, double z) { return from_tilde({xt, yt, z}, p); };
    py::class_<Point3>(m, "Point3")
        .def(py::init([](double x, double y, double z) { return Point3{x, y, z}; }))
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z);
    m.def("from_tilde", tilde, py::arg("params"), py::arg("xt"), py::arg("yt"), py::arg("z"));

    m.def("aperture_field", &aperture_field);
    m.def("pe_field", &pe_field);

    m.def("find_rays_to", [](const Point3& r, const BeamParams& p) {
        py::list out;
        for (const auto& s : find_rays_to(r, p).rays) {
            py::dict d;
            d["index"] = s.index;
            d["xi"] = s.ray.xi;
            d["eta"] = s.ray.eta;
            d["sigma"] = s.sigma;
            d["M"] = s.M;
            d["amplitude"] = s.amplitude;
            out.append(d);
        }
        return out;
    });
    m.def("go_field", [](const Point3& r, const BeamParams& p) { return go_field(r, p).value; });

    py::class_<LocalFrame>(m, "LocalFrame")
        .def_readonly("theta", &LocalFrame::theta)
        .def_readonly("delta_hat", &LocalFrame::delta_hat)
        .def_readonly("D1", &LocalFrame::D1)
        .def_readonly("D2", &LocalFrame::D2);
    m.def("local_frame", &local_frame);
    m.def("frame_for_range", &frame_for_range);

    py::class_<CanonicalArgs>(m, "CanonicalArgs")
        .def(py::init([](Complex x, Complex y, Complex d, Complex e) { return CanonicalArgs{x, y, d, e}; }),
             py::arg("x_bar"), py::arg("y_bar"), py::arg("delta_bar") = 0.0, py::arg("epsilon_bar") = 0.0)
        .def_readwrite("x_bar", &CanonicalArgs::x_bar)
        .def_readwrite("y_bar", &CanonicalArgs::y_bar)
        .def_readwrite("delta_bar", &CanonicalArgs::delta_bar)
        .def_readwrite("epsilon_bar", &CanonicalArgs::epsilon_bar);
    m.def("normalize_coords", &normalize_coords);
    m.def("hypumb_series", [](const CanonicalArgs& a, int P, int M) { return hypumb_series(a, P, M); },
          py::arg("args"), py::arg("P") = 3, py::arg("M") = 3);
    m.def("hypumb_quadrature", [](const CanonicalArgs& a, double t) { return hypumb_quadrature(a, t); },
          py::arg("args"), py::arg("target") = 1e-9);
    m.def("canonical_field_hat",
          [](const LocalFrame& f, double x, double y) { return canonical_field_hat(f, x, y).value; });
    m.def("pe_offset_xbar", [](double th, const BeamParams& p) { return pe_offset_xbar(th, p).exact; });
    m.def("caustic1_offset_xbar", &caustic1_offset_xbar);
    m.def("fresnel_kz0", [](const BeamParams& p) { return fresnel_report(p, {}).k_z0; });

    m.def(
        "field_scan",
        [](const std::map<std::string, std::string>& kv) {
            const auto r = run_field_scan(scenario_from_kv(kv));
            py::list out;
            for (const auto& f : r.samples) {
                py::dict d;
                d["method"] = method_name(f.method);
                d["u"] = f.u;
                d["v"] = f.v;
                d["value"] = f.value;
                d["intensity"] = f.intensity;
                d["valid"] = f.valid;
                out.append(d);
            }
            return out;
        },
        py::arg("config"));
}
