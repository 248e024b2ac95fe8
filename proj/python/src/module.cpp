#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gausscrit/cli.hpp"
#include "gausscrit/criteria.hpp"
#include "gausscrit/errors.hpp"
#include "gausscrit/oracle.hpp"
#include "gausscrit/scan.hpp"

namespace py = pybind11;
using namespace gausscrit;

namespace {

CovarianceMatrix to_covariance(const Matrix4& m) {
    return CovarianceMatrix(m);
}

py::tuple verdict_tuple(const SeparabilityVerdict& v) {
    return py::make_tuple(v.separable, v.margin);
}

py::tuple cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"gausscrit"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_gausscrit, m) {
    m.doc() = "Quantumness criteria for Gaussian two-mode squeezed states.";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<AsymmetryError>(m, "AsymmetryError", validation.ptr());
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<StateParams>(m, "StateParams")
        .def(py::init<double, double, double>(), py::arg("r"), py::arg("phi") = 0.0, py::arg("p") = 1.0)
        .def_property_readonly("r", &StateParams::r)
        .def_property_readonly("phi", &StateParams::phi)
        .def_property_readonly("p", &StateParams::p)
        .def("__repr__", [](const StateParams& s) {
            return "StateParams(r=" + py::repr(py::float_(s.r())).cast<std::string>() +
                   ", phi=" + py::repr(py::float_(s.phi())).cast<std::string>() +
                   ", p=" + py::repr(py::float_(s.p())).cast<std::string>() + ")";
        });

    py::class_<AxesParams>(m, "AxesParams")
        .def_readonly("a", &AxesParams::a)
        .def_readonly("b", &AxesParams::b);

    py::class_<CriteriaReport>(m, "CriteriaReport")
        .def_readonly("params", &CriteriaReport::params)
        .def_readonly("axes", &CriteriaReport::axes)
        .def_readonly("discord", &CriteriaReport::discord)
        .def_readonly("bell", &CriteriaReport::bell)
        .def_readonly("bell_violated", &CriteriaReport::bell_violated)
        .def_readonly("sep_margin", &CriteriaReport::sep_margin)
        .def_readonly("separable", &CriteriaReport::separable);

    m.def("covariance_two_mode", [](double r, double phi) { return covariance_two_mode(r, phi).matrix(); },
          py::arg("r"), py::arg("phi") = 0.0);
    m.def("covariance_homogeneous", [](const StateParams& s) { return covariance_homogeneous(s).matrix(); });
    m.def("covariance_factorized", [](const StateParams& s) { return covariance_factorized(s).matrix(); });
    m.def("partition_transform", [](double theta) { return build_partition_transform({theta}).matrix(); });
    m.def("purity_of", [](const Matrix4& g) { return purity_of(to_covariance(g)); });
    m.def("is_physical_covariance", [](const Matrix4& g) { return is_physical_covariance(g); });
    m.def("params_to_axes", &params_to_axes, py::arg("r"), py::arg("p"));
    m.def(
        "axes_to_params",
        [](double a, double b) {
            const auto rp = axes_to_params(a, b);
            return py::make_tuple(rp.r, rp.p);
        },
        py::arg("a"), py::arg("b"));

    m.def("entropy_f", &entropy_f);
    m.def("entropy_g", &entropy_g);
    m.def("discord", &discord);
    m.def("discord_asymptotic", &discord_asymptotic, py::arg("b"));
    m.def("correlator_zz", &correlator_zz);
    m.def("correlator_xx", &correlator_xx);
    m.def("bell_expectation", &bell_expectation);
    m.def("is_separable_closed", [](const StateParams& s) { return verdict_tuple(is_separable_closed(s)); });
    m.def("is_separable_theta",
          [](const StateParams& s, double theta) { return verdict_tuple(is_separable_theta(s, {theta})); });
    m.def("simon_separability", [](const Matrix4& g) { return verdict_tuple(simon_separability(to_covariance(g))); });
    m.def("evaluate", &evaluate);

    m.def(
        "quad_correlator_xx",
        [](const StateParams& s, int order, double extent) { return quad_correlator_xx(s, {order, extent}); },
        py::arg("params"), py::arg("order") = 64, py::arg("extent_sigmas") = 10.0);
    m.def("zz_from_wigner", [](const Matrix4& g) { return zz_from_wigner(to_covariance(g)); });
    m.def(
        "wigner_normalization",
        [](const Matrix4& g, int order, double extent) { return wigner_normalization(to_covariance(g), {order, extent}); },
        py::arg("gamma"), py::arg("order") = 48, py::arg("extent_sigmas") = 10.0);

    m.def(
        "scan_csv",
        [](const std::string& plane, const std::string& x, const std::string& y, double phi, int threads) {
            GridSpec spec;
            if (plane == "ab") {
                spec.plane = Plane::Axes;
            } else if (plane != "pr") {
                throw ValidationError("plane must be pr or ab");
            }
            spec.x = parse_axis(x);
            spec.y = parse_axis(y);
            spec.phi = phi;
            spec.threads = threads;
            std::vector<ScanRecord> records;
            {
                py::gil_scoped_release release;
                records = run_grid(spec);
            }
            std::ostringstream out;
            write_records_csv(records, out);
            return out.str();
        },
        py::arg("plane"), py::arg("x"), py::arg("y"), py::arg("phi") = 0.0, py::arg("threads") = 0,
        "Grid sweep rendered as CSV text. Axes are 'min:max:count[:log]' strings.");

    m.def("run_cli", &cli, py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
