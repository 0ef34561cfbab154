#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shadowsim/analytic.hpp"
#include "shadowsim/expression.hpp"
#include "shadowsim/figures.hpp"
#include "shadowsim/grid.hpp"
#include "shadowsim/integrator.hpp"
#include "shadowsim/kinetics.hpp"
#include "shadowsim/runspec.hpp"
#include "shadowsim/shadow_limit.hpp"

namespace py = pybind11;
using namespace shadowsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shadow pattern-formation simulator: integrator, steady-state catalog, "
              "blowup certificates and the reaction-diffusion limit harness.";

    py::class_<SpatialGrid>(m, "SpatialGrid")
        .def_readonly("n_cells", &SpatialGrid::n_cells)
        .def_readonly("nodes", &SpatialGrid::nodes)
        .def_readonly("weights", &SpatialGrid::weights);

    py::class_<ShadowState>(m, "ShadowState")
        .def(py::init<>())
        .def(py::init([](Field u, double xi, double t) {
                 return ShadowState{std::move(u), xi, t};
             }),
             py::arg("u"), py::arg("xi"), py::arg("t") = 0.0)
        .def_readwrite("u", &ShadowState::u)
        .def_readwrite("xi", &ShadowState::xi)
        .def_readwrite("t", &ShadowState::t);

    m.def("make_uniform_grid", &make_uniform_grid, py::arg("n_cells"));
    m.def("quadrature", &quadrature, py::arg("grid"), py::arg("f"));
    m.def("argmax_set", &argmax_set, py::arg("grid"), py::arg("f"), py::arg("tol"));
    m.def("mask_measure", &mask_measure, py::arg("grid"), py::arg("mask"));

    py::class_<GrayScott>(m, "GrayScott")
        .def(py::init<double, double>(), py::arg("B") = 1.0, py::arg("k") = 0.1)
        .def_readwrite("B", &GrayScott::B)
        .def_readwrite("k", &GrayScott::k);
    py::class_<ActivatorInhibitor>(m, "ActivatorInhibitor")
        .def(py::init<double, double, double, double, double>(), py::arg("p") = 2.0,
             py::arg("q") = 1.0, py::arg("r") = 2.0, py::arg("s") = 0.0, py::arg("tau") = 1.0)
        .def_readwrite("p", &ActivatorInhibitor::p)
        .def_readwrite("q", &ActivatorInhibitor::q)
        .def_readwrite("r", &ActivatorInhibitor::r)
        .def_readwrite("s", &ActivatorInhibitor::s)
        .def_readwrite("tau", &ActivatorInhibitor::tau);
    py::class_<Carcinogenesis>(m, "Carcinogenesis")
        .def(py::init<double, double, double>(), py::arg("a") = 2.0, py::arg("d") = 1.0,
             py::arg("kappa0") = 65.0 / 8.0)
        .def_readwrite("a", &Carcinogenesis::a)
        .def_readwrite("d", &Carcinogenesis::d)
        .def_readwrite("kappa0", &Carcinogenesis::kappa0);
    py::class_<Generic>(m, "Generic")
        .def(py::init([](std::function<double(double, double)> f,
                         std::function<double(double, double)> g,
                         std::function<double(double, double)> f_u,
                         std::function<double(double, double)> f_xi,
                         std::function<double(double, double)> g_u,
                         std::function<double(double, double)> g_xi) {
                 return Generic{std::move(f), std::move(g), std::move(f_u), std::move(f_xi),
                                std::move(g_u), std::move(g_xi)};
             }),
             py::arg("f"), py::arg("g"), py::arg("f_u"), py::arg("f_xi"), py::arg("g_u"),
             py::arg("g_xi"));

    m.def("eval_f", &eval_f, py::arg("model"), py::arg("u"), py::arg("xi"));
    m.def("eval_g", &eval_g, py::arg("model"), py::arg("u"), py::arg("xi"));
    m.def(
        "eval_partials",
        [](const ModelKinetics& model, double u, double xi) {
            const Partials d = eval_partials(model, u, xi);
            return py::make_tuple(d.f_u, d.f_xi, d.g_u, d.g_xi);
        },
        py::arg("model"), py::arg("u"), py::arg("xi"));

    py::enum_<StabilityClass>(m, "StabilityClass")
        .value("TrivialStable", StabilityClass::TrivialStable)
        .value("UnstableAutocatalytic", StabilityClass::UnstableAutocatalytic)
        .value("OdeStable", StabilityClass::OdeStable)
        .value("OdeUnstable", StabilityClass::OdeUnstable)
        .value("Inconclusive", StabilityClass::Inconclusive);

    py::class_<SteadyState>(m, "SteadyState")
        .def_readonly("u_on", &SteadyState::u_on)
        .def_readonly("u_off", &SteadyState::u_off)
        .def_readonly("xi_bar", &SteadyState::xi_bar)
        .def_readonly("mask", &SteadyState::mask)
        .def_readonly("classification", &SteadyState::classification)
        .def_readonly("residual_f", &SteadyState::residual_f)
        .def_readonly("residual_g", &SteadyState::residual_g);

    m.def("ode_steady_states", &ode_steady_states, py::arg("model"));
    m.def(
        "shadow_steady_states",
        [](const ModelKinetics& model, const SpatialGrid& grid, const Mask& mask) {
            std::string diagnostic;
            auto states = shadow_steady_states(model, grid, mask, &diagnostic);
            return py::make_tuple(std::move(states), diagnostic);
        },
        py::arg("model"), py::arg("grid"), py::arg("mask"));
    m.def("classify_shadow_stability", &classify_shadow_stability, py::arg("model"),
          py::arg("steady"));
    m.def("eigenpair_residual", &eigenpair_residual, py::arg("model"), py::arg("grid"),
          py::arg("steady"), py::arg("w0"));
    m.def("steady_field", &steady_field, py::arg("steady"), py::arg("grid"));

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("dt_init", &IntegratorConfig::dt_init)
        .def_readwrite("dt_min", &IntegratorConfig::dt_min)
        .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
        .def_readwrite("blowup_threshold", &IntegratorConfig::blowup_threshold)
        .def_readwrite("t_end", &IntegratorConfig::t_end)
        .def_readwrite("sample_every", &IntegratorConfig::sample_every)
        .def_readwrite("monitors", &IntegratorConfig::monitors)
        .def_readwrite("lemma_lambda", &IntegratorConfig::lemma_lambda);

    py::enum_<RunStatusKind>(m, "RunStatusKind")
        .value("Completed", RunStatusKind::Completed)
        .value("Blowup", RunStatusKind::Blowup)
        .value("StepFailure", RunStatusKind::StepFailure);
    py::class_<RunStatus>(m, "RunStatus")
        .def_readonly("kind", &RunStatus::kind)
        .def_readonly("time", &RunStatus::time)
        .def_readonly("node", &RunStatus::node);
    py::class_<MonitorRecord>(m, "MonitorRecord")
        .def_readonly("tag", &MonitorRecord::tag)
        .def_readonly("t", &MonitorRecord::t)
        .def_readonly("lhs", &MonitorRecord::lhs)
        .def_readonly("rhs", &MonitorRecord::rhs)
        .def_readonly("pass_", &MonitorRecord::pass);
    py::class_<RunReport>(m, "RunReport")
        .def_readonly("status", &RunReport::status)
        .def_readonly("monitor_log", &RunReport::monitor_log)
        .def_readonly("max_u_history", &RunReport::max_u_history)
        .def_readonly("clamped_negatives", &RunReport::clamped_negatives)
        .def_readonly("accepted_steps", &RunReport::accepted_steps)
        .def_readonly("rejected_steps", &RunReport::rejected_steps)
        .def_readonly("fitted_u_rate", &RunReport::fitted_u_rate)
        .def_readonly("fitted_xi_rate", &RunReport::fitted_xi_rate)
        .def("monitors_clean", &RunReport::monitors_clean);

    py::class_<XiHistory>(m, "XiHistory")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("times"),
             py::arg("values"))
        .def("value_at", &XiHistory::value_at)
        .def_property_readonly("times", &XiHistory::times)
        .def_property_readonly("values", &XiHistory::values);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("xi_history", &Trajectory::xi_history);

    m.def("step_shadow", &step_shadow, py::arg("model"), py::arg("grid"), py::arg("state"),
          py::arg("dt"));
    m.def("run_shadow", &run_shadow, py::arg("model"), py::arg("grid"), py::arg("u0"),
          py::arg("xi0"), py::arg("cfg"));
    m.def("run_kinetics", &run_kinetics, py::arg("model"), py::arg("u0"), py::arg("xi0"),
          py::arg("cfg"));
    m.def("known_monitor_tags", &known_monitor_tags);

    py::class_<SingularMass>(m, "SingularMass")
        .def_readonly("value", &SingularMass::value)
        .def_readonly("coarse_value", &SingularMass::coarse_value)
        .def_readonly("converged", &SingularMass::converged);
    py::class_<Hypothesis>(m, "Hypothesis")
        .def_readonly("name", &Hypothesis::name)
        .def_readonly("lhs", &Hypothesis::lhs)
        .def_readonly("rhs", &Hypothesis::rhs)
        .def_readonly("satisfied", &Hypothesis::satisfied);
    py::class_<BlowupCertificate>(m, "BlowupCertificate")
        .def_readonly("model", &BlowupCertificate::model)
        .def_readonly("hypotheses", &BlowupCertificate::hypotheses)
        .def_readonly("satisfied", &BlowupCertificate::satisfied)
        .def_readonly("reliable", &BlowupCertificate::reliable)
        .def_readonly("singular_mass", &BlowupCertificate::singular_mass)
        .def_readonly("tmax_upper", &BlowupCertificate::tmax_upper)
        .def_readonly("lambda_window", &BlowupCertificate::lambda_window)
        .def_readonly("x_star", &BlowupCertificate::x_star)
        .def_readonly("max_set", &BlowupCertificate::max_set);

    m.def("singular_mass_functional", &singular_mass_functional, py::arg("model"),
          py::arg("grid"), py::arg("u0"), py::arg("x_star"));
    m.def("blowup_certificate", &blowup_certificate, py::arg("model"), py::arg("grid"),
          py::arg("u0"), py::arg("xi0"));
    m.def("exact_u", &exact_u, py::arg("model"), py::arg("u0_value"), py::arg("t"),
          py::arg("history"));
    m.def("exact_u_profile", &exact_u_profile, py::arg("model"), py::arg("u0"), py::arg("t"),
          py::arg("history"));
    m.def("tmax_from_history", &tmax_from_history, py::arg("model"), py::arg("u0_max"),
          py::arg("history"));

    py::enum_<KineticRegime>(m, "KineticRegime")
        .value("Global", KineticRegime::Global)
        .value("BlowupPossible", KineticRegime::BlowupPossible)
        .value("NeitherClassified", KineticRegime::NeitherClassified);
    py::class_<AiRegimeReport>(m, "AiRegimeReport")
        .def_readonly("regime", &AiRegimeReport::regime)
        .def_readonly("steady_11", &AiRegimeReport::steady_11)
        .def_readonly("tau_threshold", &AiRegimeReport::tau_threshold)
        .def_readonly("exponent_condition", &AiRegimeReport::exponent_condition);
    m.def("ai_kinetic_regime", &ai_kinetic_regime, py::arg("p"), py::arg("q"), py::arg("r"),
          py::arg("s"), py::arg("tau"));

    py::class_<RdState>(m, "RdState")
        .def_readonly("u", &RdState::u)
        .def_readonly("v", &RdState::v)
        .def_readonly("t", &RdState::t);
    py::class_<RdTrajectory>(m, "RdTrajectory").def_readonly("samples", &RdTrajectory::samples);
    py::class_<LimitRow>(m, "LimitRow")
        .def_readonly("D", &LimitRow::D)
        .def_readonly("metric", &LimitRow::metric);
    py::class_<LimitStudy>(m, "LimitStudy")
        .def_readonly("rows", &LimitStudy::rows)
        .def_readonly("fitted_exponent", &LimitStudy::fitted_exponent)
        .def_readonly("shadow_xi0", &LimitStudy::shadow_xi0);

    m.def("neumann_laplacian", &neumann_laplacian, py::arg("grid"), py::arg("f"), py::arg("D"));
    m.def("run_rdode", &run_rdode, py::arg("model"), py::arg("grid"), py::arg("u0"),
          py::arg("v0"), py::arg("D"), py::arg("cfg"));
    m.def("convergence_metric", &convergence_metric, py::arg("rd_traj"),
          py::arg("shadow_traj"), py::arg("alpha"));
    m.def("convergence_study", &convergence_study, py::arg("model"), py::arg("grid"),
          py::arg("u0"), py::arg("v0"), py::arg("d_list"), py::arg("alpha"), py::arg("t_end"));

    m.def(
        "parse_expression",
        [](const std::string& text) {
            const Expression expr = parse_expression(text);
            return std::function<double(double)>(
                [expr](double x) { return expr(x); });
        },
        py::arg("text"), "Compile an initial-data expression to a callable of x.");

    py::class_<FigurePreset>(m, "FigurePreset")
        .def_readonly("id", &FigurePreset::id)
        .def_readonly("model", &FigurePreset::model)
        .def_readonly("xi0", &FigurePreset::xi0)
        .def_readonly("u0_expr", &FigurePreset::u0_expr)
        .def_readonly("t_end", &FigurePreset::t_end)
        .def_readonly("grid_n", &FigurePreset::grid_n);
    m.def("figure_preset", &figure_preset, py::arg("id"));

    py::class_<FigureResult>(m, "FigureResult")
        .def_readonly("trajectory", &FigureResult::trajectory)
        .def_readonly("report", &FigureResult::report)
        .def_readonly("grid", &FigureResult::grid)
        .def_readonly("files", &FigureResult::files);
    m.def("reproduce_figure", &reproduce_figure, py::arg("id"), py::arg("output_dir") = "");

    py::register_exception<PastBlowupError>(m, "PastBlowupError");
}
