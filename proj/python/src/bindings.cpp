#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bhlab/approx.hpp"
#include "bhlab/diffgeo.hpp"
#include "bhlab/experiments.hpp"
#include "bhlab/foliation.hpp"
#include "bhlab/mesh.hpp"

namespace py = pybind11;
using namespace bhlab;

namespace {

py::array_t<double> vec(const Vec3& v)
{
    py::array_t<double> out(3);
    auto r = out.mutable_unchecked<1>();
    for (int i = 0; i < 3; ++i)
        r(i) = v(i);
    return out;
}

py::dict report_dict(const VerificationReport& rep)
{
    return py::module_::import("json").attr("loads")(rep.to_json().dump());
}

} // namespace

PYBIND11_MODULE(_bhlab, m)
{
    m.doc() = "bent helicoid laboratory";
    m.attr("__version__") = BHLAB_VERSION;

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("closed_form", [](double a, double x, double y) { return vec(bent_helicoid_closed(a, cplx(x, y))); },
          py::arg("a"), py::arg("x"), py::arg("y"));
    m.def(
        "numeric_position",
        [](double a, double x, double y, int order) {
            return vec(SurfaceEvaluator::numeric(BjorlingSpec::circle(a), order).position(cplx(x, y)));
        },
        py::arg("a"), py::arg("x"), py::arg("y"), py::arg("order") = 16);
    m.def("conformal_factor", &conformal_factor, py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("gauss_map_degree", [](int n) { return gauss_map_degree(n); }, py::arg("n"));
    m.def(
        "total_curvature",
        [](int n, int resolution) {
            const TotalCurvature t = total_curvature(n, resolution);
            py::dict d;
            d["degree"] = t.degree;
            d["numeric"] = t.numeric;
            d["exact"] = t.exact;
            d["truncation"] = t.truncation;
            return d;
        },
        py::arg("n"), py::arg("resolution") = 400);
    m.def(
        "ruled_deviation_sup",
        [](double a) {
            const GridMax g = ruled_deviation_sup(a);
            return py::make_tuple(g.value, g.at.real(), g.at.imag());
        },
        py::arg("a"));
    m.def("strip_halfwidth", &strip_halfwidth, py::arg("a"));
    m.def(
        "embeddedness_verdict",
        [](int a, double R, int samples) {
            const EmbeddednessReport r = embeddedness_verdict(a, R, samples);
            py::dict d;
            d["verdict"] = verdict_name(r.verdict);
            d["failures"] = r.failures;
            d["expected_count"] = r.expected_count;
            d["min_separation"] = r.min_separation;
            d["min_angle_outside"] = r.min_angle_outside;
            d["sector_excess"] = r.sector_excess;
            d["offenders"] = r.offenders.size();
            d["note"] = r.note;
            return d;
        },
        py::arg("a"), py::arg("R"), py::arg("samples") = 200);
    m.def(
        "foliation_angle_metric", [](int a, double R, double delta) { return foliation_angle_metric(a, R, delta); },
        py::arg("a"), py::arg("R"), py::arg("delta"));
    m.def(
        "mesh",
        [](double a, double x0, double x1, double y0, double y1, int nx, int ny, bool numeric) {
            const auto s = numeric ? SurfaceEvaluator::numeric(BjorlingSpec::circle(a)) : SurfaceEvaluator::closed_circle(a);
            const Mesh mesh = mesh_generate(s, x0, x1, y0, y1, nx, ny);
            py::array_t<double> v({static_cast<py::ssize_t>(mesh.vertices.size()), py::ssize_t{3}});
            py::array_t<int> q({static_cast<py::ssize_t>(mesh.quads.size()), py::ssize_t{4}});
            auto vr = v.mutable_unchecked<2>();
            auto qr = q.mutable_unchecked<2>();
            for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
                for (int k = 0; k < 3; ++k)
                    vr(static_cast<py::ssize_t>(i), k) = mesh.vertices[i](k);
            for (std::size_t i = 0; i < mesh.quads.size(); ++i)
                for (int k = 0; k < 4; ++k)
                    qr(static_cast<py::ssize_t>(i), k) = mesh.quads[i][static_cast<std::size_t>(k)];
            return py::make_tuple(v, q);
        },
        py::arg("a"), py::arg("x0"), py::arg("x1"), py::arg("y0"), py::arg("y1"), py::arg("nx"), py::arg("ny"),
        py::arg("numeric") = false);
    m.def("experiments", [] {
        std::vector<std::string> names;
        for (const auto& e : experiment_catalog())
            names.push_back(e.name);
        return names;
    });
    m.def(
        "run_config",
        [](const std::string& config_json) {
            ojson cfg;
            try {
                cfg = ojson::parse(config_json);
            } catch (const ojson::parse_error& e) {
                throw UsageError(std::string("config: ") + e.what());
            }
            return report_dict(run_config(cfg));
        },
        py::arg("config_json"));
    m.def(
        "pipeline",
        [](const std::string& builtin, const std::string& curve, double h, int degree, double a) {
            PipelineOptions o;
            o.builtin = builtin;
            o.curve_path = curve;
            o.h = h;
            o.degree = degree;
            o.spin = a;
            VerificationReport rep;
            run_pipeline(o, rep);
            return report_dict(rep);
        },
        py::arg("builtin") = "stadium", py::arg("curve") = "", py::arg("h") = 0.5, py::arg("degree") = 20,
        py::arg("a") = 30.0);
}
