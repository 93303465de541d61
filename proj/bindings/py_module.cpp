// py_module.cpp - python bindings for the core operations

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "masertur/io.hpp"
#include "masertur/closed_forms.hpp"
#include "masertur/validate.hpp"

namespace py = pybind11;
using namespace masertur;

namespace {

py::dict cumulants_dict(const Cumulants& c) {
    py::dict d;
    d["current"] = c.current;
    d["variance"] = c.variance;
    d["method"] = to_string(c.method);
    d["diagnostics"] = c.diagnostics;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Full counting statistics and TUR quantifiers for maser heat engines";

    py::register_exception<Error>(m, "EngineError");

    py::enum_<ModelKind>(m, "ModelKind")
        .value("ThreeLevelI", ModelKind::ThreeLevelI)
        .value("ThreeLevelII", ModelKind::ThreeLevelII)
        .value("FourLevelNIC", ModelKind::FourLevelNIC);

    py::enum_<CumulantMethod>(m, "CumulantMethod")
        .value("EigFD", CumulantMethod::EigFD)
        .value("CharPoly", CumulantMethod::CharPoly)
        .value("Trajectory", CumulantMethod::Trajectory);

    py::class_<EngineParams>(m, "EngineParams")
        .def(py::init([](double gamma_h, double gamma_c, double lam, double n_h,
                         double n_c, double p) {
                 EngineParams pr{gamma_h, gamma_c, lam, n_h, n_c, p};
                 pr.validate();
                 return pr;
             }),
             py::arg("gamma_h"), py::arg("gamma_c"), py::arg("lambda_"), py::arg("n_h"),
             py::arg("n_c"), py::arg("p") = 0.0)
        .def_readwrite("gamma_h", &EngineParams::gamma_h)
        .def_readwrite("gamma_c", &EngineParams::gamma_c)
        .def_readwrite("lambda_", &EngineParams::lambda)
        .def_readwrite("n_h", &EngineParams::n_h)
        .def_readwrite("n_c", &EngineParams::n_c)
        .def_readwrite("p", &EngineParams::p)
        .def("scaled_couplings", &EngineParams::scaled_couplings);

    py::class_<LevelFrequencies>(m, "LevelFrequencies")
        .def(py::init<double, double>(), py::arg("omega_h"), py::arg("omega_c"))
        .def_readwrite("omega_h", &LevelFrequencies::omega_h)
        .def_readwrite("omega_c", &LevelFrequencies::omega_c);

    py::class_<TurReport>(m, "TurReport")
        .def_readonly("kind", &TurReport::kind)
        .def_readonly("params", &TurReport::params)
        .def_readonly("current", &TurReport::current)
        .def_readonly("variance", &TurReport::variance)
        .def_readonly("sigma", &TurReport::sigma)
        .def_readonly("q", &TurReport::q)
        .def_readonly("reliability", &TurReport::reliability)
        .def_readonly("power", &TurReport::power)
        .def_readonly("power_variance", &TurReport::power_variance)
        .def("to_csv_row", [](const TurReport& r) { return io::csv_row(r); })
        .def("to_json", [](const TurReport& r) { return io::to_json(r).dump(); });

    m.def("occupation", &occupation, py::arg("omega"), py::arg("T"));

    m.def(
        "build_tilted_liouvillian",
        [](ModelKind kind, const EngineParams& pr, double chi) {
            return build_tilted_liouvillian(kind, pr, chi).entries;
        },
        py::arg("kind"), py::arg("params"), py::arg("chi") = 0.0);
    m.def(
        "basis_labels",
        [](ModelKind kind, const EngineParams& pr) {
            return build_tilted_liouvillian(kind, pr, 0.0).basis;
        },
        py::arg("kind"), py::arg("params"));

    m.def(
        "steady_state",
        [](ModelKind kind, const EngineParams& pr) {
            return steady_state(kind, pr).components;
        },
        py::arg("kind"), py::arg("params"));
    m.def("cold_current_from_state",
          [](ModelKind kind, const EngineParams& pr) {
              return cold_current_from_state(kind, pr, steady_state(kind, pr));
          });
    m.def("spectral_gap", &spectral_gap);

    m.def(
        "dominant_eigenvalue",
        [](ModelKind kind, const EngineParams& pr, double chi) {
            return dominant_eigenvalue(build_tilted_liouvillian(kind, pr, chi));
        },
        py::arg("kind"), py::arg("params"), py::arg("chi"));

    m.def(
        "cumulants",
        [](ModelKind kind, const EngineParams& pr, CumulantMethod method, double step) {
            return cumulants_dict(cumulants(kind, pr, method, step));
        },
        py::arg("kind"), py::arg("params"),
        py::arg("method") = CumulantMethod::CharPoly, py::arg("step") = 1e-3);
    m.def(
        "trajectory_cumulants",
        [](ModelKind kind, const EngineParams& pr, double horizon, int n_traj,
           std::uint64_t seed) {
            return cumulants_dict(trajectory_cumulants(kind, pr, horizon, n_traj, seed));
        },
        py::arg("kind"), py::arg("params"), py::arg("horizon") = 0.0,
        py::arg("n_traj") = 10000, py::arg("seed") = 1);
    m.def("current_model1_closed_form", &current_model1_closed_form);

    m.def("tur_q", &tur_q, py::arg("kind"), py::arg("params"),
          py::arg("method") = CumulantMethod::CharPoly, py::arg("step") = 1e-3,
          py::arg("freqs") = std::nullopt);
    m.def("entropy_production", &entropy_production);
    m.def("q_pop", &q_pop);
    m.def("q_nic_p_minus1", &q_nic_p_minus1);
    m.def("q_nic_endpoint_limit", &q_nic_endpoint_limit, py::arg("params"),
          py::arg("method") = CumulantMethod::CharPoly);
    m.def("q1_closed_form", &q1_closed_form);
    m.def("q2_closed_form", &q2_closed_form);
    m.def("q_ht_closed_form", &q_ht_closed_form);

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("bin_width", &Histogram::bin_width)
        .def_readonly("first_bin", &Histogram::first_bin)
        .def_readonly("counts", &Histogram::counts)
        .def_readonly("total", &Histogram::total)
        .def_readonly("excluded", &Histogram::excluded)
        .def_readonly("requested", &Histogram::requested)
        .def_readonly("min_value", &Histogram::min_value)
        .def_readonly("max_value", &Histogram::max_value)
        .def_readonly("violations", &Histogram::violations)
        .def_readonly("violation_fraction", &Histogram::violation_fraction)
        .def("to_csv", [](const Histogram& h) { return io::csv(h); })
        .def("to_json", [](const Histogram& h) { return io::to_json(h).dump(); });

    m.def(
        "q_histogram",
        [](ModelKind kind, std::uint64_t count, std::uint64_t seed, double bin_width,
           CumulantMethod method, int workers) {
            SweepSpec spec;
            spec.kind = kind;
            spec.count = count;
            spec.seed = seed;
            spec.bin_width = bin_width;
            return q_histogram(spec, method, workers);
        },
        py::arg("kind"), py::arg("count"), py::arg("seed"), py::arg("bin_width") = 0.01,
        py::arg("method") = CumulantMethod::CharPoly, py::arg("workers") = 0);

    auto curve_to_list = [](const Curve& c) {
        py::list out;
        for (const auto& pt : c.points) {
            py::dict d;
            d["x"] = pt.x;
            d["degenerate"] = pt.degenerate;
            if (!pt.note.empty()) d["note"] = pt.note;
            if (!pt.degenerate) {
                d["q"] = pt.report.q;
                d["current"] = pt.report.current;
                d["variance"] = pt.report.variance;
                d["sigma"] = pt.report.sigma;
                d["reliability"] = pt.report.reliability;
            }
            out.append(std::move(d));
        }
        return out;
    };
    m.def(
        "lambda_curve",
        [curve_to_list](ModelKind kind, const EngineParams& base,
                        const std::vector<double>& grid, CumulantMethod method) {
            return curve_to_list(lambda_curve(kind, base, grid, method));
        },
        py::arg("kind"), py::arg("base"), py::arg("grid"),
        py::arg("method") = CumulantMethod::CharPoly);
    m.def(
        "p_curve",
        [curve_to_list](const EngineParams& base, const std::vector<double>& grid,
                        CumulantMethod method) {
            return curve_to_list(p_curve(base, grid, method));
        },
        py::arg("base"), py::arg("grid"), py::arg("method") = CumulantMethod::CharPoly);
    m.def("scaling_check", &scaling_check, py::arg("kind"), py::arg("params"),
          py::arg("ks"), py::arg("method") = CumulantMethod::CharPoly);

    m.def("discrepancy_report", &discrepancy_report);

    m.attr("__version__") = MASERTUR_VERSION;
}
