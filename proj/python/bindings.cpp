#include "invosc/bogoliubov.hpp"
#include "invosc/errors.hpp"
#include "invosc/fock_oracle.hpp"
#include "invosc/operator_algebra.hpp"
#include "invosc/scenario.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace invosc;

namespace {

py::object frequency_to_python(const InstantaneousFrequency& w) {
    if (const auto* omega = std::get_if<double>(&w)) {
        return py::float_(*omega);
    }
    return py::none();
}

py::dict report_to_dict(const VerificationReport& report) {
    py::list entries;
    for (const auto& e : report.entries) {
        py::dict d;
        d["name"] = e.name;
        d["max_residual"] = e.max_residual;
        d["tolerance"] = e.tolerance;
        d["pass"] = e.pass;
        d["worst_time"] = e.worst_time;
        entries.append(d);
    }
    py::dict out;
    out["status"] = report.pass() ? "pass" : "fail";
    out["entries"] = entries;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of the invariant-operator oscillator library";

    py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InitializationError>(m, "InitializationError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Coefficients>(m, "Coefficients")
        .def(py::init<double, double, double>(), py::arg("X") = 1.0, py::arg("Y") = 0.0, py::arg("Z") = 1.0)
        .def_readwrite("X", &Coefficients::X)
        .def_readwrite("Y", &Coefficients::Y)
        .def_readwrite("Z", &Coefficients::Z);

    py::class_<CoefficientSample>(m, "CoefficientSample")
        .def_readonly("X", &CoefficientSample::X)
        .def_readonly("Y", &CoefficientSample::Y)
        .def_readonly("Z", &CoefficientSample::Z)
        .def_readonly("dX", &CoefficientSample::dX)
        .def_readonly("dY", &CoefficientSample::dY);

    py::class_<CoefficientProfile>(m, "CoefficientProfile")
        .def_static("constant", [](double X, double Y, double Z) { return CoefficientProfile::constant({X, Y, Z}); },
                    py::arg("X"), py::arg("Y"), py::arg("Z"))
        .def_static(
            "modulated",
            [](double X, double Y, double Z, double epsilon, double nu) {
                return CoefficientProfile::modulated({X, Y, Z}, epsilon, nu);
            },
            py::arg("X0"), py::arg("Y0"), py::arg("Z0"), py::arg("epsilon"), py::arg("nu"))
        .def_static(
            "quench",
            [](const Coefficients& initial, const Coefficients& target, double t_center, double width,
               std::optional<double> t_return) {
                return CoefficientProfile::quench(initial, target, t_center, width, t_return);
            },
            py::arg("initial"), py::arg("target"), py::arg("t_center"), py::arg("width"),
            py::arg("t_return") = py::none())
        .def_static(
            "tabulated",
            [](const std::vector<std::array<double, 4>>& rows) {
                std::vector<TabulatedRow> table;
                for (const auto& r : rows) {
                    table.push_back({r[0], r[1], r[2], r[3]});
                }
                return CoefficientProfile::tabulated(std::move(table));
            },
            py::arg("rows"))
        .def_property_readonly("family", [](const CoefficientProfile& p) { return std::string(to_string(p.family())); })
        .def("eval", &CoefficientProfile::eval, py::arg("t"))
        .def(
            "instantaneous_frequency",
            [](const CoefficientProfile& p, double t) { return frequency_to_python(p.instantaneous_frequency(t)); },
            py::arg("t"), "sqrt(XZ - Y^2), or None in the inverted regime")
        .def("effective_frequency_squared", &CoefficientProfile::effective_frequency_squared, py::arg("t"));

    py::class_<ReferenceParams>(m, "ReferenceParams")
        .def_static("at", &ReferenceParams::at, py::arg("profile"), py::arg("t0"), py::arg("hbar") = 1.0)
        .def_readonly("t0", &ReferenceParams::t0)
        .def_readonly("X0", &ReferenceParams::X0)
        .def_readonly("Y0", &ReferenceParams::Y0)
        .def_readonly("Z0", &ReferenceParams::Z0)
        .def_readonly("omega0", &ReferenceParams::omega0)
        .def_readonly("hbar", &ReferenceParams::hbar);

    py::class_<ModeState>(m, "ModeState")
        .def(py::init([](double t, Complex u, Complex udot) { return ModeState{t, u, udot}; }), py::arg("t"),
             py::arg("u"), py::arg("udot"))
        .def_readwrite("t", &ModeState::t)
        .def_readwrite("u", &ModeState::u)
        .def_readwrite("udot", &ModeState::udot);

    py::class_<ModeTrajectory>(m, "ModeTrajectory")
        .def_readonly("samples", &ModeTrajectory::samples)
        .def_readonly("step", &ModeTrajectory::step)
        .def_readonly("max_wronskian_drift", &ModeTrajectory::max_wronskian_drift)
        .def_readonly("max_wronskian_residual", &ModeTrajectory::max_wronskian_residual)
        .def_readonly("soft_limit_time", &ModeTrajectory::soft_limit_time);

    m.def("vacuum_init", py::overload_cast<const CoefficientProfile&, double>(&vacuum_init), py::arg("profile"),
          py::arg("t0"));
    m.def("analytic_mode", &analytic_mode, py::arg("ref"), py::arg("t"));
    m.def("wronskian", &wronskian, py::arg("state"), py::arg("X"));
    m.def("wronskian_residual", &wronskian_residual, py::arg("state"), py::arg("X"));
    m.def(
        "integrate",
        [](const CoefficientProfile& profile, const ModeState& start, double t_end, double step,
           std::size_t sample_every) { return integrate(profile, start, t_end, step, sample_every); },
        py::arg("profile"), py::arg("start"), py::arg("t_end"), py::arg("step") = 1e-3, py::arg("sample_every") = 1,
        py::call_guard<py::gil_scoped_release>());

    py::class_<BogoliubovPair>(m, "BogoliubovPair")
        .def(py::init([](Complex alpha, Complex beta) { return BogoliubovPair{alpha, beta, 0.0}; }), py::arg("alpha"),
             py::arg("beta"))
        .def_readonly("alpha", &BogoliubovPair::alpha)
        .def_readonly("beta", &BogoliubovPair::beta)
        .def_readonly("t", &BogoliubovPair::t);

    py::class_<SqueezeTriple>(m, "SqueezeTriple")
        .def(py::init([](double theta, double r, double phi) { return SqueezeTriple{theta, r, phi}; }),
             py::arg("theta"), py::arg("r"), py::arg("phi"))
        .def_readonly("theta", &SqueezeTriple::theta)
        .def_readonly("r", &SqueezeTriple::r)
        .def_readonly("phi", &SqueezeTriple::phi);

    m.def(
        "bogoliubov_coeffs",
        [](const ModeState& state, const CoefficientProfile& profile, const ReferenceParams& ref) {
            const auto c = profile.eval(state.t);
            return bogoliubov_coeffs(state, c.X, c.Y, ref);
        },
        py::arg("state"), py::arg("profile"), py::arg("ref"));
    m.def("unitarity_residual", &unitarity_residual, py::arg("pair"));
    m.def("squeeze_params", &squeeze_params, py::arg("pair"), py::arg("unitarity_limit") = 1e-6);
    m.def("reconstruct", &reconstruct, py::arg("triple"));

    py::class_<CorrelatorSet>(m, "CorrelatorSet")
        .def_readonly("t", &CorrelatorSet::t)
        .def_readonly("n", &CorrelatorSet::n)
        .def_readonly("q2", &CorrelatorSet::q2)
        .def_readonly("p2", &CorrelatorSet::p2)
        .def_readonly("cross", &CorrelatorSet::cross);

    m.def(
        "correlators",
        [](const ModeState& state, const CoefficientProfile& profile, unsigned n, double hbar) {
            const auto c = profile.eval(state.t);
            return correlators(state, c.X, c.Y, n, hbar);
        },
        py::arg("state"), py::arg("profile"), py::arg("n") = 0, py::arg("hbar") = 1.0);
    m.def("uncertainty_product", &uncertainty_product, py::arg("correlators"));

    m.def(
        "fock_mean_occupation",
        [](const CoefficientProfile& profile, const ReferenceParams& ref, long dimension, long n, double t_end,
           double step) {
            const auto psi = propagate(profile, number_state(dimension, n, ref.t0), t_end, step, ref);
            return mean_occupation(psi);
        },
        py::arg("profile"), py::arg("ref"), py::arg("dimension"), py::arg("n"), py::arg("t_end"), py::arg("step"),
        py::call_guard<py::gil_scoped_release>(), "<a^dag a> after propagating |n> from ref.t0 to t_end");
    m.def(
        "fock_correlators",
        [](const CoefficientProfile& profile, const ReferenceParams& ref, long dimension, unsigned n, double t_end,
           double step) {
            const auto psi = propagate(profile, number_state(dimension, n, ref.t0), t_end, step, ref);
            return expect_correlators(psi, ref, dimension, n);
        },
        py::arg("profile"), py::arg("ref"), py::arg("dimension"), py::arg("n"), py::arg("t_end"), py::arg("step"),
        py::call_guard<py::gil_scoped_release>());

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_static("parse", &ScenarioConfig::parse, py::arg("json_text"))
        .def_static(
            "load", [](const std::string& path) { return ScenarioConfig::load(path); }, py::arg("path"))
        .def_readwrite("t0", &ScenarioConfig::t0)
        .def_readwrite("t_end", &ScenarioConfig::t_end)
        .def_readwrite("step", &ScenarioConfig::step)
        .def_readwrite("hbar", &ScenarioConfig::hbar)
        .def_readwrite("number_states", &ScenarioConfig::number_states)
        .def("validate", &ScenarioConfig::validate);

    m.def(
        "run",
        [](const ScenarioConfig& config) {
            const auto result = run(config);
            std::ostringstream out;
            write_csv(out, result, config);
            return out.str();
        },
        py::arg("config"), py::call_guard<py::gil_scoped_release>(), "Runs a scenario and returns the CSV text");
    m.def(
        "verify", [](const ScenarioConfig& config) { return report_to_dict(verify(config)); }, py::arg("config"));
    m.def(
        "sweep",
        [](const ScenarioConfig& config, const std::string& parameter, const std::vector<double>& values) {
            py::list rows;
            for (const auto& r : sweep(config, parameter, values)) {
                py::dict d;
                d["value"] = r.value;
                d["final_beta2"] = r.final_beta2;
                d["final_r"] = r.final_r;
                d["max_wronskian_residual"] = r.max_wronskian_residual;
                d["max_unitarity_residual"] = r.max_unitarity_residual;
                rows.append(d);
            }
            return rows;
        },
        py::arg("config"), py::arg("parameter"), py::arg("values"));
}
